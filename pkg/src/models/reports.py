from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from src.models.forms import Form, format_term

Bidegree = Tuple[int, int]


@dataclass(frozen=True)
class PageEntry:
    """E_r^{p,q} = Z / B inside the total-degree space K^{p+q}."""

    p: int
    q: int
    dim: int
    cycles_dim: int
    boundaries_dim: int
    representatives: Tuple[Form, ...] = ()


@dataclass(frozen=True)
class Page:
    r: int
    m: int
    entries: Dict[Bidegree, PageEntry] = field(default_factory=dict)

    def dim(self, p: int, q: int) -> int:
        entry = self.entries.get((p, q))
        return entry.dim if entry else 0

    def dims(self) -> Dict[Bidegree, int]:
        return {key: entry.dim for key, entry in sorted(self.entries.items())}

    def representatives(self, p: int, q: int) -> Tuple[Form, ...]:
        entry = self.entries.get((p, q))
        return entry.representatives if entry else ()

    def total_dims(self) -> List[int]:
        """sum_{p+q=k} dim E_r^{p,q} for k = 0..2m."""
        totals = [0] * (2 * self.m + 1)
        for (p, q), entry in self.entries.items():
            totals[p + q] += entry.dim
        return totals

    @property
    def euler(self) -> int:
        return sum(
            (-1) ** (p + q) * entry.dim for (p, q), entry in self.entries.items()
        )


def form_terms(form: Form) -> List[str]:
    """Signed term strings in canonical order, e.g. ``["f1^f2", "-f1^~f1"]``."""
    return [format_term(mono, coeff) for mono, coeff in form.sorted_terms()]


class ZigZagWitness(BaseModel):
    start: List[int]
    length: int
    chain: List[List[str]]
    terminal: List[str]


@dataclass(frozen=True)
class ZigZag:
    """Chain beta_0..beta_{r-1} with beta_i in A^{p+i,q-i}.

    Relations: del-bar beta_0 = 0 and del beta_{i-1} + del-bar beta_i = 0;
    ``terminal`` is del beta_{r-1}, a representative of d_r[beta_0].
    """

    start: Bidegree
    chain: Tuple[Form, ...]
    terminal: Form

    @property
    def length(self) -> int:
        return len(self.chain)

    @property
    def target(self) -> Bidegree:
        p, q = self.start
        return p + self.length, q - self.length + 1

    def total(self) -> Form:
        """beta_0 + ... + beta_{r-1}, an element of the total complex."""
        result = self.chain[0]
        for beta in self.chain[1:]:
            result = result + beta
        return result

    def to_witness(self) -> ZigZagWitness:
        return ZigZagWitness(
            start=list(self.start),
            length=self.length,
            chain=[form_terms(beta) for beta in self.chain],
            terminal=form_terms(self.terminal),
        )


class ZigZagCheck(BaseModel):
    ok: bool
    violated_index: Optional[int] = None
    message: str = ""


class PageTable(BaseModel):
    r: int
    dims: List[List[int]]


class FrolicherReport(BaseModel):
    """Everything the pages/hodge commands print; JSON layout is stable."""

    m: int
    pages: List[PageTable]
    betti: List[int]
    hodge: List[List[int]]
    degeneration_page: Optional[int] = None
    euler: int
    witness: Optional[ZigZagWitness] = None
    differential_ranks: List[List[int]] = Field(default_factory=list, exclude=True)
    conjugate_hodge: List[List[int]] = Field(default_factory=list, exclude=True)

    def page_dims(self, r: int) -> Dict[Bidegree, int]:
        for table in self.pages:
            if table.r == r:
                return {(p, q): d for p, q, d in table.dims}
        raise KeyError(f"Page {r} not computed")

    def hodge_number(self, p: int, q: int) -> int:
        for hp, hq, h in self.hodge:
            if (hp, hq) == (p, q):
                return h
        return 0

    def frolicher_inequality(self) -> List[bool]:
        """b_k <= sum_{p+q=k} h^{p,q} for every k."""
        sums = [0] * len(self.betti)
        for p, q, h in self.hodge:
            sums[p + q] += h
        return [b <= s for b, s in zip(self.betti, sums)]

    def conjugation_symmetric(self) -> bool:
        """dim H_dbar^{p,q} == dim H_del^{q,p} for every (p,q)."""
        del_dims = {(p, q): h for p, q, h in self.conjugate_hodge}
        return all(del_dims.get((q, p), 0) == h for p, q, h in self.hodge)


class XnVerification(BaseModel):
    """Outcome of the d_n != 0 check on the family X_n."""

    n: int
    chain_valid: bool
    violated_index: Optional[int] = None
    relations: Dict[str, bool] = Field(default_factory=dict)
    start_class_nonzero: bool = False
    terminal_matches: bool = False
    image_class_nonzero: bool = False
    not_extendable: bool = False
    lives_to: Optional[int] = None
    top_dies_at: Optional[int] = None
    source_dim: int = 0
    target_dim: int = 0

    @property
    def ok(self) -> bool:
        return (
            self.chain_valid
            and all(self.relations.values())
            and self.start_class_nonzero
            and self.terminal_matches
            and self.image_class_nonzero
            and self.not_extendable
        )
