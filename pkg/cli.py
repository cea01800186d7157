"""
Entry point for running the CLI from the repository root
"""
import sys
from pathlib import Path

# Add the package directory to path
package_path = Path(__file__).parent / "gapindex"
sys.path.insert(0, str(package_path))

from main import main  # noqa: E402

__all__ = ["main"]

if __name__ == "__main__":
    sys.exit(main())
