#!/usr/bin/env python3
"""
Architecture Guard Script
Verifies project layout and import layering
"""
import ast
import sys
from pathlib import Path
from typing import List, Set

# Query structures sit below these; they must never import them back
OUTER_MODULES = {"main", "benchmark", "serialization", "sdj_reduction", "workload"}

CORE_MODULES = [
    "gapindex/text_core.py",
    "gapindex/range_successor.py",
    "gapindex/consecutive_finder.py",
    "gapindex/cluster_partition.py",
    "gapindex/cluster_tables.py",
    "gapindex/decomposition.py",
    "gapindex/oracle.py",
]


def check_layout(root: Path) -> List[str]:
    """Verify required directories and files"""
    required_dirs = [
        "gapindex",
        "gapindex/indexes",
        "gapindex/tests",
        "docs/adr",
        "docs/changelog",
        "scripts",
    ]

    required_files = [
        "README.md",
        "DESIGN.md",
        "requirements.txt",
        "gapindex/main.py",
        "gapindex/pytest.ini",
        "gapindex/requirements.txt",
        "docs/adr/0000-scope-lock.md",
    ]

    errors = []

    for dir_path in required_dirs:
        if not (root / dir_path).is_dir():
            errors.append(f"Missing required directory: {dir_path}")

    for file_path in required_files:
        if not (root / file_path).is_file():
            errors.append(f"Missing required file: {file_path}")

    readme = root / "README.md"
    if readme.is_file() and "## Usage" not in readme.read_text():
        errors.append("README.md must contain '## Usage' section")

    return errors


def imported_modules(path: Path) -> Set[str]:
    """Top-level names imported by a module"""
    tree = ast.parse(path.read_text(), filename=str(path))
    names = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.Import):
            names.update(alias.name.split(".")[0] for alias in node.names)
        elif isinstance(node, ast.ImportFrom) and node.level == 0 and node.module:
            names.add(node.module.split(".")[0])
    return names


def check_layering(root: Path) -> List[str]:
    """Core modules and index kinds must not depend on the CLI, bench or file layers"""
    errors = []
    paths = [root / p for p in CORE_MODULES]
    paths.extend(sorted((root / "gapindex/indexes").glob("*.py")))

    for path in paths:
        if not path.is_file():
            errors.append(f"Missing core module: {path.relative_to(root)}")
            continue
        bad = imported_modules(path) & OUTER_MODULES
        for name in sorted(bad):
            errors.append(f"{path.relative_to(root)} imports outer module '{name}'")

    return errors


def main(root: Path = Path(".")) -> int:
    """Run architecture compliance checks"""
    print("Running architecture guard...")

    all_errors = check_layout(root)
    if (root / "gapindex").is_dir():
        all_errors.extend(check_layering(root))

    if all_errors:
        print("\n❌ Architecture guard failed:")
        for error in all_errors:
            print(f"  - {error}")
        return 1

    print("✅ Architecture guard passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
