"""Chain complexes of finite-dimensional GF(2) vector spaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

from .linalg import BitMatrix


@dataclass(frozen=True)
class ChainComplex:
    """``dims[i] = dim C_i`` and ``diffs[i]`` is ``d_{i+1}: C_{i+1} -> C_i``.

    ``truncated`` marks a finite window of an infinite complex: the unknown
    differential out of the top group makes the top homology an upper bound
    only.
    """

    dims: Tuple[int, ...]
    diffs: Tuple[BitMatrix, ...]
    truncated: bool = False
    label: str = field(default="", compare=False)

    @property
    def top_index(self) -> int:
        return len(self.dims) - 1

    def d(self, k: int) -> BitMatrix:
        """The differential ``d_k: C_k -> C_{k-1}`` for ``1 <= k <= top_index``."""
        return self.diffs[k - 1]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failing_index: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate(c: ChainComplex) -> ValidationReport:
    """Check shapes and ``d_i d_{i+1} = 0``; a failure names index ``i`` of ``diffs``."""
    if len(c.diffs) != max(len(c.dims) - 1, 0):
        return ValidationReport(False, None, f"{len(c.dims)} groups need {len(c.dims) - 1} differentials")
    for i, m in enumerate(c.diffs):
        if m.shape != (c.dims[i], c.dims[i + 1]):
            return ValidationReport(False, i, f"diffs[{i}] has shape {m.shape}, expected {(c.dims[i], c.dims[i + 1])}")
    for i in range(len(c.diffs) - 1):
        if not (c.diffs[i] @ c.diffs[i + 1]).is_zero():
            return ValidationReport(False, i, f"diffs[{i}] @ diffs[{i + 1}] != 0")
    return ValidationReport(True)
