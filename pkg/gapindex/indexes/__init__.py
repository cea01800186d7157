"""
Gapped consecutive-occurrence indexes
"""
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional, Tuple, Type, Union

from errors import GapIndexError
from models import GapQuery, QueryLine, QueryMode, ReportResult
from range_successor import OrsIndex
from text_core import Locus, TextIndex, build_text_index


def format_answer(mode: QueryMode, result: Union[bool, int, ReportResult]) -> str:
    """Output line of one query: yes/no, a decimal count, or space-separated i,j pairs"""
    if isinstance(result, ReportResult) and mode != "report":
        result = result.exists if mode == "exists" else result.count
    if mode == "exists":
        return "yes" if result else "no"
    if mode == "count":
        return str(result)
    return result.render()


class GapIndex(ABC):
    """Base class for all query structures over one text"""

    kind: str = ""

    def __init__(self, text_index: TextIndex, tau: Optional[int] = None, **kwargs):
        self.text_index = text_index
        self.requested_tau = tau
        self.ors = OrsIndex(text_index.sa)
        self.config = kwargs

    @property
    def n(self) -> int:
        return self.text_index.n

    @abstractmethod
    def exists(self, query: GapQuery) -> bool:
        """Whether a valid consecutive pair exists"""
        pass

    @abstractmethod
    def count(self, query: GapQuery) -> int:
        """Number of valid consecutive pairs"""
        pass

    @abstractmethod
    def report(self, query: GapQuery) -> ReportResult:
        """All valid consecutive pairs sorted by i"""
        pass

    def answer(self, line: QueryLine) -> str:
        """Run one script line and format its output"""
        run = {"exists": self.exists, "count": self.count, "report": self.report}[line.mode]
        return format_answer(line.mode, run(line.to_query()))

    def ors_calls(self) -> int:
        return self.ors.query_count()

    def reset_calls(self) -> None:
        self.ors.reset_count()

    def stats(self) -> Dict[str, Any]:
        return {"kind": self.kind, "n": self.n}

    def _loci(self, query: GapQuery) -> Tuple[Optional[Locus], Optional[Locus]]:
        tree = self.text_index.tree
        return tree.locus(query.p1), tree.locus(query.p2)


def get_index_class(kind: str) -> Type[GapIndex]:
    """Get index class for a kind"""
    from .count import CountIndex
    from .report import ReportIndex
    from .zero_beta import ZbIndex
    from .baseline import MergeIndex
    from .quadratic import QuadraticIndex

    kinds = {
        "count": CountIndex,
        "report": ReportIndex,
        "zero-beta": ZbIndex,
        "baseline": MergeIndex,
        "quadratic": QuadraticIndex,
    }

    index_class = kinds.get(kind)
    if not index_class:
        raise GapIndexError(f"Unknown index kind: {kind}")

    return index_class


def build_index(kind: str, text: bytes, tau: Optional[int] = None, **kwargs) -> GapIndex:
    """Build the text index and the query structure of the given kind"""
    index_class = get_index_class(kind)
    return index_class(build_text_index(text), tau=tau, **kwargs)
