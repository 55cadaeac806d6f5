"""Small result records returned by checkers."""

from dataclasses import dataclass, field
from typing import Any, Optional

VERIFIED = "verified"
VACUOUS = "vacuous"
VIOLATED = "violated"


@dataclass(frozen=True)
class Check:
    """A boolean answer plus an optional witness explaining a ``False``.

    Truthiness follows ``ok`` so a ``Check`` can be used directly in ``if``.
    """

    ok: bool
    witness: Any = None

    def __bool__(self):
        return bool(self.ok)


@dataclass
class Verdict:
    """Outcome of checking one theorem instance (or an aggregate of them).

    ``status`` is one of ``verified``, ``vacuous`` (a hypothesis failed, named
    in ``detail``) or ``violated`` (``witness`` set).
    """

    theorem: str
    status: str
    witness: Any = None
    detail: str = ""
    digest: Optional[str] = None
    seed: Optional[int] = None
    counts: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (VERIFIED, VACUOUS, VIOLATED):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == VIOLATED and self.witness is None:
            raise ValueError("a violated verdict needs a witness")

    @property
    def ok(self):
        return self.status != VIOLATED

    def to_dict(self):
        d = {"theorem": self.theorem, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.detail:
            d["detail"] = self.detail
        if self.digest is not None:
            d["digest"] = self.digest
        if self.seed is not None:
            d["seed"] = self.seed
        if self.counts:
            d["counts"] = dict(sorted(self.counts.items()))
        return d


def verdict(theorem, violations, vacuous_reason=None, **kw):
    """Build a verdict from a list of violations (first one becomes the witness)."""
    if violations:
        return Verdict(theorem, VIOLATED, witness=violations[0], **kw)
    if vacuous_reason:
        return Verdict(theorem, VACUOUS, detail=vacuous_reason, **kw)
    return Verdict(theorem, VERIFIED, **kw)
