"""Nilpotent endomorphisms and their monodromy filtrations.

The monodromy filtration of a nilpotent operator N on V, centered at c, is
the unique increasing filtration M with

  (a) N M_i ⊆ M_{i-2},
  (b) N^r : Gr_{c+r} -> Gr_{c-r} an isomorphism for every r >= 0.

It is computed here by the kernel/image convolution

  M_{c+k} = sum over i - j = k, i, j >= 0 of  Ker N^{i+1} ∩ Im N^j,

evaluated via the identity Ker N^{i+1} ∩ Im N^j = N^j(Ker N^{i+j+1}), which
needs one subspace sum per step instead of a quadratic pile of
intersections.  Jordan theory provides the independent test oracle for the
graded dimensions; see the test suite.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from .errors import DimensionMismatch, InvalidForm, InvalidOperator
from .ratlin import RatMatrix, Subspace, contains, image, kernel, subspace_sum


@dataclass(frozen=True)
class NilpotentOp:
    """A validated nilpotent operator with its nilpotency index e (N^e = 0)."""

    dim: int
    matrix: RatMatrix
    nilpotency_index: int

    @classmethod
    def build(cls, matrix: RatMatrix) -> "NilpotentOp":
        if matrix.rows != matrix.cols:
            raise InvalidOperator("operator matrix must be square")
        n = matrix.rows
        if n == 0:
            return cls(0, matrix, 1)
        power = matrix
        for e in range(1, n + 1):
            if power.is_zero():
                return cls(n, matrix, e)
            power = power @ matrix
        raise InvalidOperator("matrix is not nilpotent")

    def powers(self, up_to: int):
        """[N^0, N^1, ..., N^up_to] with N^k = 0 for k >= nilpotency index."""
        out = [RatMatrix.identity(self.dim)]
        for _ in range(up_to):
            out.append(out[-1] @ self.matrix)
        return out


@dataclass(frozen=True)
class Filtration:
    """Increasing, exhaustive filtration of Q^n, stored by jump indices.

    steps[0] is the zero-subspace sentinel and the final step is the full
    space; queries between jumps resolve to the nearest lower step.
    """

    ambient_dim: int
    center: int
    steps: tuple  # ((index, Subspace), ...) strictly increasing indices

    @classmethod
    def from_steps(cls, ambient_dim, center, steps):
        steps = sorted(steps, key=lambda p: p[0])
        if not steps:
            raise InvalidForm("a filtration needs at least one step")
        compressed = []
        prev = None
        for idx, sub in steps:
            if sub.ambient_dim != ambient_dim:
                raise DimensionMismatch("step in wrong ambient space")
            if prev is not None:
                if not contains(sub, prev[1]):
                    raise InvalidForm("filtration steps must be increasing")
                if sub == prev[1]:
                    continue
            compressed.append((idx, sub))
            prev = (idx, sub)
        lo_idx, lo_sub = compressed[0]
        if lo_sub.dim != 0:
            compressed.insert(0, (lo_idx - 1, Subspace.zero(ambient_dim)))
        if compressed[-1][1].dim != ambient_dim:
            raise InvalidForm("filtration must exhaust the ambient space")
        return cls(ambient_dim, center, tuple(compressed))

    def step(self, i: int) -> Subspace:
        keys = [idx for idx, _ in self.steps]
        pos = bisect_right(keys, i) - 1
        if pos < 0:
            return Subspace.zero(self.ambient_dim)
        return self.steps[pos][1]

    @property
    def lowest_index(self):
        return self.steps[0][0]

    @property
    def highest_index(self):
        return self.steps[-1][0]

    def graded_dim(self, i: int) -> int:
        return self.step(i).dim - self.step(i - 1).dim

    def jump_dims(self):
        return tuple((idx, sub.dim) for idx, sub in self.steps)

    def to_json_dict(self):
        return {
            "ambient_dim": self.ambient_dim,
            "center": self.center,
            "steps": [
                {"index": idx, "basis": sub.basis.to_json_dict()}
                for idx, sub in self.steps
            ],
        }


def monodromy_filtration(op: NilpotentOp, center: int) -> Filtration:
    """The unique filtration characterized by N M_i ⊆ M_{i-2} and graded isos."""
    n, e = op.dim, op.nilpotency_index
    powers = op.powers(e)
    # kernels of N^1 .. N^e; Ker N^m = V for m >= e
    kernel_basis = {}
    for m in range(1, e + 1):
        kernel_basis[m] = kernel(powers[m]).basis
    full = RatMatrix.identity(n)
    steps = []
    for k in range(-e, e):
        gens = []
        for j in range(max(0, -k), e):
            i = k + j
            if i < 0:
                continue
            # Ker N^{i+1} ∩ Im N^j = N^j(Ker N^{i+j+1})
            m = i + j + 1
            kb = full if m > e else kernel_basis[m]
            gens.extend((powers[j] @ kb).columns())
        steps.append((center + k, Subspace.span(n, gens)))
    return Filtration.from_steps(n, center, steps)


@dataclass(frozen=True)
class MonodromyAxiomReport:
    """Per-index / per-r verdicts for the two filtration axioms."""

    lowering: tuple      # ((index, ok), ...)  N M_i inside M_{i-2}
    graded_isos: tuple   # ((r, dim_plus, dim_minus, rank, ok), ...)
    ok: bool

    def to_json_dict(self):
        return {
            "lowering": [{"index": i, "ok": ok} for i, ok in self.lowering],
            "graded_isos": [
                {"r": r, "dim_plus": dp, "dim_minus": dm, "rank": rk, "ok": ok}
                for r, dp, dm, rk, ok in self.graded_isos
            ],
            "ok": self.ok,
        }


def verify_monodromy_axioms(op: NilpotentOp, filt: Filtration) -> MonodromyAxiomReport:
    """Check both defining properties of the monodromy filtration against filt."""
    if op.dim != filt.ambient_dim:
        raise DimensionMismatch("operator and filtration dimensions differ")
    c = filt.center
    lo, hi = filt.lowest_index, filt.highest_index
    lowering = []
    for idx in range(lo, hi + 1):
        nm = image(op.matrix @ filt.step(idx).basis)
        lowering.append((idx, contains(filt.step(idx - 2), nm)))
    rmax = max(hi - c, c - lo, 0) + 1
    powers = op.powers(min(rmax, op.nilpotency_index))

    def power(r):
        if r < len(powers):
            return powers[r]
        return RatMatrix.zeros(op.dim, op.dim)

    graded = []
    for r in range(0, rmax + 1):
        dp = filt.graded_dim(c + r)
        dm = filt.graded_dim(c - r)
        upper = filt.step(c + r)
        below = filt.step(c - r - 1)
        shifted = image(power(r) @ upper.basis)
        rk = subspace_sum(shifted, below).dim - below.dim
        graded.append((r, dp, dm, rk, dp == dm and rk == dp))
    ok = all(x[1] for x in lowering) and all(g[4] for g in graded)
    return MonodromyAxiomReport(tuple(lowering), tuple(graded), ok)


def compare_shifted(m: Filtration, w: Filtration, shift: int) -> bool:
    """True iff m_i equals w_{shift+i} for every index i."""
    if m.ambient_dim != w.ambient_dim:
        raise DimensionMismatch("filtrations live in different spaces")
    lo = min(m.lowest_index, w.lowest_index - shift) - 1
    hi = max(m.highest_index, w.highest_index - shift) + 1
    for i in range(lo, hi + 1):
        if m.step(i) != w.step(shift + i):
            return False
    return True
