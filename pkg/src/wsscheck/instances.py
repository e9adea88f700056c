"""Instance generators, shipped toy threefolds, and the mutation harness.

Generators:

  * ``gen_smooth``   one smooth connected stratum realizing a symmetric Betti
                     profile through an explicit Lefschetz-string model (no
                     transfers; the degenerate case where everything is pure).
  * ``gen_ngon``     a cycle of rational curves meeting in nodes: n curves,
                     n points, restriction = signed incidence matrix of the
                     cycle graph, Gysin = its pairing adjoint.  The standard
                     multiplicative-degeneration testbed.
  * ``gen_chain``    same with a path graph; monodromy acts trivially.
  * ``times_projective_plane``
                     crosses a relative-dimension-1 datum with the cohomology
                     of the projective plane, producing a threefold datum.
                     A product of a semistable curve model with a smooth
                     surface is again semistable, so this is an honest
                     threefold family with nontrivial monodromy.
  * ``blowup_point_datum``
                     the degeneration obtained by blowing up a point in the
                     special fiber of a constant projective-space family:
                     two components (a point blow-up and a projective space)
                     glued along a plane.  Pure, but with nonzero transfers.

All intersection numbers in the handwritten instances are standard blow-up
arithmetic: for the exceptional plane E of a point blow-up of a threefold,
E^3 = 1 and H.E = 0; the ample class used is 2H - E on the blow-up and the
hyperplane on the other component, both restricting to the same hyperplane
class on the gluing plane.

The mutation harness edits exactly one matrix entry so that a chosen
validation axiom fails.  A single-entry edit can violate neighbouring axioms
as well (a Gysin entry is pinned by adjunction, a Lefschetz entry by the
ample anchor); the harness prefers edits that break only the target and
falls back to edits where the target is among the failures.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import (
    InvalidProfile,
    MutationNotApplicable,
    ParameterError,
    PreconditionError,
    SchemaError,
)
from .ratlin import RatMatrix, as_rat
from .strata import (
    AXIOMS,
    SemistableDatum,
    StratumLevel,
    TransferMaps,
    load,
    validate,
)


# -- smooth profiles -----------------------------------------------------------


def _string_blocks(n, prim, d):
    """Blocks (s, count, power) of the degree-d piece of the string model."""
    out = []
    for s in range(d % 2, min(d, 2 * n - d) + 1, 2):
        out.append((s, prim[s], (d - s) // 2))
    return out


def gen_smooth(n: int, betti) -> SemistableDatum:
    """A single smooth stratum carrying the given Betti profile."""
    betti = tuple(int(x) for x in betti)
    if n < 1:
        raise ParameterError("relative dimension must be >= 1")
    if len(betti) != 2 * n + 1:
        raise InvalidProfile(f"betti profile must have length {2 * n + 1}")
    if any(b < 0 for b in betti):
        raise InvalidProfile("betti numbers must be nonnegative")
    if betti != betti[::-1]:
        raise InvalidProfile("betti profile must be symmetric")
    if betti[0] != 1:
        raise InvalidProfile("profile must be connected (h^0 = 1)")
    prim = {}
    for s in range(0, n + 1):
        prim[s] = betti[s] - (betti[s - 2] if s >= 2 else 0)
        if prim[s] < 0:
            raise InvalidProfile(
                f"h^{s} < h^{s - 2}: no hard-Lefschetz structure exists"
            )
    if n % 2 == 1:
        for s in range(1, n + 1, 2):
            if prim[s] % 2:
                raise InvalidProfile(
                    f"odd-degree primitive count p_{s} must be even "
                    "(middle pairing is alternating)"
                )

    def dim(d):
        return sum(cnt for _, cnt, _ in _string_blocks(n, prim, d))

    def offsets(d):
        out = {}
        pos = 0
        for s, cnt, t in _string_blocks(n, prim, d):
            out[s] = (pos, cnt, t)
            pos += cnt
        return out, pos

    lefschetz = {}
    for d in range(0, 2 * n - 1):
        src, sdim = offsets(d)
        tgt, tdim = offsets(d + 2)
        if sdim == 0 or tdim == 0:
            continue
        placements = []
        for s, (co, cnt, t) in src.items():
            if s in tgt and cnt:
                placements.append((tgt[s][0], co, RatMatrix.identity(cnt)))
        lefschetz[d] = RatMatrix.assemble(tdim, sdim, placements)
    pairings = {}
    for d in range(0, 2 * n + 1):
        rows_off, rdim = offsets(d)
        cols_off, cdim = offsets(2 * n - d)
        if rdim == 0 and cdim == 0:
            continue
        placements = []
        for s, (ro, cnt, t) in rows_off.items():
            co, cnt2, t2 = cols_off[s]
            if cnt == 0:
                continue
            if s % 2 == 0:
                val = 1 if (s // 2) % 2 == 0 else -1
                blk = RatMatrix.identity(cnt).scaled(val)
            elif t != t2:
                blk = RatMatrix.identity(cnt).scaled(1 if t < t2 else -1)
            else:
                # middle piece of an odd string: alternating block pairing
                ent = [[0] * cnt for _ in range(cnt)]
                for b in range(cnt // 2):
                    ent[2 * b][2 * b + 1] = 1
                    ent[2 * b + 1][2 * b] = -1
                blk = RatMatrix.from_rows(ent, cols=cnt)
            placements.append((ro, co, blk))
        pairings[d] = RatMatrix.assemble(rdim, cdim, placements)
    blocks = {d: (0,) * dim(d) for d in range(0, 2 * n + 1) if dim(d)}
    ample = tuple(1 if t == 0 else 0 for t in range(dim(2)))
    level = StratumLevel(
        level=1,
        components=1,
        cohomology_dims=tuple(dim(d) for d in range(0, 2 * n + 1)),
        pairings=pairings,
        lefschetz=lefschetz,
        component_blocks=blocks,
    )
    return SemistableDatum(
        n=n,
        m=1,
        levels={1: level},
        transfers=TransferMaps(restriction={}, gysin={}),
        ample_class=ample,
    )


# -- curve degenerations ---------------------------------------------------------


def _curve_datum(m, incidence):
    npts = incidence.rows
    level1 = StratumLevel(
        level=1,
        components=m,
        cohomology_dims=(m, 0, m),
        pairings={0: RatMatrix.identity(m), 2: RatMatrix.identity(m)},
        lefschetz={0: RatMatrix.identity(m)},
        component_blocks={0: tuple(range(m)), 2: tuple(range(m))},
    )
    level2 = StratumLevel(
        level=2,
        components=npts,
        cohomology_dims=(npts,),
        pairings={0: RatMatrix.identity(npts)},
        lefschetz={},
        component_blocks={0: tuple(range(npts))},
    )
    return SemistableDatum(
        n=1,
        m=m,
        levels={1: level1, 2: level2},
        transfers=TransferMaps(
            restriction={(1, 0): incidence},
            gysin={(2, 0): incidence.transpose()},
        ),
        ample_class=(1,) * m,
    )


def gen_ngon(n: int) -> SemistableDatum:
    """Cycle of n rational curves; the double points join consecutive curves.

    Signs follow the global component order: the point joining components a < b
    restricts with +1 from a and -1 from b.
    """
    if n < 3:
        raise ParameterError("an n-gon needs n >= 3")
    rows = []
    for i in range(n):
        a, b = i, (i + 1) % n
        a, b = min(a, b), max(a, b)
        row = [0] * n
        row[a] = 1
        row[b] = -1
        rows.append(row)
    return _curve_datum(n, RatMatrix.from_rows(rows, cols=n))


def gen_chain(n: int) -> SemistableDatum:
    """Path of n rational curves: n - 1 double points, trivial monodromy."""
    if n < 2:
        raise ParameterError("a chain needs n >= 2")
    rows = []
    for i in range(n - 1):
        row = [0] * n
        row[i] = 1
        row[i + 1] = -1
        rows.append(row)
    return _curve_datum(n, RatMatrix.from_rows(rows, cols=n))


# -- product with the projective plane -----------------------------------------

_P2_DEGREES = (0, 2, 4)


def times_projective_plane(datum: SemistableDatum) -> SemistableDatum:
    """Cross a relative-dimension-1 datum with the projective plane."""
    if datum.n != 1:
        raise PreconditionError("product builder expects a curve-type datum")

    def blocks(j, s):
        d_old = datum.level_dim(j)
        out = []
        for c in _P2_DEGREES:
            so = s - c
            if 0 <= so <= 2 * d_old:
                out.append((c, so, datum.h(j, so)))
        return out

    def offsets(j, s):
        out = {}
        pos = 0
        for c, so, h in blocks(j, s):
            out[c] = (pos, so, h)
            pos += h
        return out, pos

    levels = {}
    for j in sorted(datum.levels):
        lvl = datum.levels[j]
        d_new = datum.level_dim(j) + 2
        dims = tuple(
            sum(h for _, _, h in blocks(j, s)) for s in range(0, 2 * d_new + 1)
        )
        pairings = {}
        for s in range(0, 2 * d_new + 1):
            rows_off, rdim = offsets(j, s)
            cols_off, cdim = offsets(j, 2 * d_new - s)
            if rdim == 0 or cdim == 0:
                continue
            placements = []
            for c, (ro, so, h) in rows_off.items():
                cc = 4 - c
                if cc in cols_off and h:
                    placements.append((ro, cols_off[cc][0], datum.pairing(j, so)))
            pairings[s] = RatMatrix.assemble(rdim, cdim, placements)
        lefschetz = {}
        for s in range(0, 2 * d_new - 1):
            src_off, sdim = offsets(j, s)
            tgt_off, tdim = offsets(j, s + 2)
            if sdim == 0 or tdim == 0:
                continue
            placements = []
            for c, (co, so, h) in src_off.items():
                if h == 0:
                    continue
                if c in tgt_off and tgt_off[c][1] == so + 2:
                    placements.append((tgt_off[c][0], co, datum.lefschetz_map(j, so)))
                if c + 2 in tgt_off and tgt_off[c + 2][1] == so:
                    placements.append((tgt_off[c + 2][0], co, RatMatrix.identity(h)))
            lefschetz[s] = RatMatrix.assemble(tdim, sdim, placements)
        cblocks = {}
        for s in range(0, 2 * d_new + 1):
            acc = []
            for c, so, h in blocks(j, s):
                if h:
                    acc.extend(lvl.component_blocks.get(so, (0,) * h))
            if acc:
                cblocks[s] = tuple(acc)
        levels[j] = StratumLevel(
            level=j,
            components=lvl.components,
            cohomology_dims=dims,
            pairings=pairings,
            lefschetz=lefschetz,
            component_blocks=cblocks,
        )

    restriction = {}
    gysin = {}
    for j in sorted(datum.levels):
        d_new_src = datum.level_dim(j) + 2
        if j + 1 in datum.levels:
            for s in range(0, 2 * d_new_src + 1):
                src_off, sdim = offsets(j, s)
                tgt_off, tdim = offsets(j + 1, s)
                if sdim == 0 or tdim == 0:
                    continue
                placements = []
                for c, (co, so, h) in src_off.items():
                    if c in tgt_off and h and tgt_off[c][2]:
                        placements.append(
                            (tgt_off[c][0], co, datum.restriction_map(j, so))
                        )
                mat = RatMatrix.assemble(tdim, sdim, placements)
                if not mat.is_zero():
                    restriction[(j, s)] = mat
        if j - 1 in datum.levels:
            for s in range(0, 2 * d_new_src + 1):
                src_off, sdim = offsets(j, s)
                tgt_off, tdim = offsets(j - 1, s + 2)
                if sdim == 0 or tdim == 0:
                    continue
                placements = []
                for c, (co, so, h) in src_off.items():
                    if c in tgt_off and h and tgt_off[c][1] == so + 2 and tgt_off[c][2]:
                        placements.append((tgt_off[c][0], co, datum.gysin_map(j, so)))
                mat = RatMatrix.assemble(tdim, sdim, placements)
                if not mat.is_zero():
                    gysin[(j, s)] = mat
    amp_off, amp_dim = offsets(1, 2)
    ample = [0] * amp_dim
    if 0 in amp_off:  # old H^2 block carries the old ample class
        pos = amp_off[0][0]
        for t, x in enumerate(datum.ample_class):
            ample[pos + t] = as_rat(x)
    if 2 in amp_off:  # old H^0 block carries the plane hyperplane class
        pos, _, h = amp_off[2]
        for t in range(h):
            ample[pos + t] = 1
    return SemistableDatum(
        n=3,
        m=datum.m,
        levels=levels,
        transfers=TransferMaps(restriction=restriction, gysin=gysin),
        ample_class=tuple(ample),
    )


# -- the blow-up toy --------------------------------------------------------------


def blowup_point_datum() -> SemistableDatum:
    """Blow-up of a point in the special fiber of a constant P^3 family.

    Component 0 is the point blow-up (classes H, E with H^3 = 1, E^3 = 1,
    H.E = 0), component 1 the exceptional projective space (class H').  The
    gluing plane is the exceptional plane of component 0 and a hyperplane of
    component 1; the ample class 2H - E on one side and H' on the other both
    restrict to its hyperplane class.
    """
    mk = RatMatrix.from_rows
    level1 = StratumLevel(
        level=1,
        components=2,
        cohomology_dims=(2, 0, 3, 0, 3, 0, 2),
        pairings={
            0: RatMatrix.identity(2),
            2: RatMatrix.identity(3),
            4: RatMatrix.identity(3),
            6: RatMatrix.identity(2),
        },
        lefschetz={
            0: mk([[2, 0], [-1, 0], [0, 1]]),
            2: mk([[2, 0, 0], [0, -1, 0], [0, 0, 1]]),
            4: mk([[2, -1, 0], [0, 0, 1]]),
        },
        component_blocks={
            0: (0, 1),
            2: (0, 0, 1),
            4: (0, 0, 1),
            6: (0, 1),
        },
    )
    level2 = StratumLevel(
        level=2,
        components=1,
        cohomology_dims=(1, 0, 1, 0, 1),
        pairings={
            0: RatMatrix.identity(1),
            2: RatMatrix.identity(1),
            4: RatMatrix.identity(1),
        },
        lefschetz={0: RatMatrix.identity(1), 2: RatMatrix.identity(1)},
        component_blocks={0: (0,), 2: (0,), 4: (0,)},
    )
    return SemistableDatum(
        n=3,
        m=2,
        levels={1: level1, 2: level2},
        transfers=TransferMaps(
            restriction={
                (1, 0): mk([[1, -1]]),
                (1, 2): mk([[0, -1, -1]]),
                (1, 4): mk([[0, 1, -1]]),
            },
            gysin={
                (2, 0): mk([[0], [1], [-1]]),
                (2, 2): mk([[0], [-1], [-1]]),
                (2, 4): mk([[1], [-1]]),
            },
        ),
        ample_class=(2, -1, 1),
    )


# -- toy registry ------------------------------------------------------------------


def _toy_gon3():
    return times_projective_plane(gen_ngon(3))


def _toy_gon4():
    return times_projective_plane(gen_ngon(4))


def _toy_chain3():
    return times_projective_plane(gen_chain(3))


TOY_BUILDERS = {
    "toy_blowup_point": blowup_point_datum,
    "toy_gon3_x_p2": _toy_gon3,
    "toy_gon4_x_p2": _toy_gon4,
    "toy_chain3_x_p2": _toy_chain3,
}


def toy_names():
    return sorted(TOY_BUILDERS)


def build_toy(name: str) -> SemistableDatum:
    if name not in TOY_BUILDERS:
        raise ParameterError(f"unknown toy instance {name!r}; have {toy_names()}")
    return TOY_BUILDERS[name]()


def data_dir() -> Path:
    return Path(__file__).parent / "data"


def shipped_instance_paths():
    return sorted(data_dir().glob("*.json"))


def load_toy(name: str) -> SemistableDatum:
    path = data_dir() / f"{name}.json"
    if not path.exists():
        raise SchemaError(f"shipped instance {name!r} not found at {path}")
    return load(path)


# -- generator dispatch ---------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSpec:
    """Parsed generator request: smooth, ngon, chain, tensor or custom."""

    kind: str
    n: int = 0
    betti: tuple = ()
    operands: tuple = ()
    path: str = ""


def generate(spec: GeneratorSpec):
    """Build a datum (smooth/ngon/chain/custom) or a page (tensor)."""
    if spec.kind == "smooth":
        return gen_smooth(spec.n, spec.betti)
    if spec.kind == "ngon":
        return gen_ngon(spec.n)
    if spec.kind == "chain":
        return gen_chain(spec.n)
    if spec.kind == "custom":
        return load(spec.path)
    if spec.kind == "tensor":
        from .specseq import tensor_product
        from .strata import to_weight_complex

        if len(spec.operands) < 2:
            raise ParameterError("tensor needs at least two operands")
        pages = []
        for op in spec.operands:
            built = generate(op)
            if not isinstance(built, SemistableDatum):
                raise ParameterError("tensor operands must be instance generators")
            pages.append(to_weight_complex(built))
        out = pages[0]
        for page in pages[1:]:
            out = tensor_product(out, page)
        return out
    raise ParameterError(f"unknown generator kind {spec.kind!r}")


# -- mutation harness -------------------------------------------------------------------


def _mat_with_entry(m: RatMatrix, r, c, v):
    ent = list(m.entries)
    ent[r * m.cols + c] = as_rat(v)
    return RatMatrix(m.rows, m.cols, tuple(ent))


def _with_pairing(datum, j, s, mat):
    lvl = datum.levels[j]
    pairings = dict(lvl.pairings)
    pairings[s] = mat
    levels = dict(datum.levels)
    levels[j] = replace(lvl, pairings=pairings)
    return replace(datum, levels=levels)


def _with_lefschetz(datum, j, s, mat):
    lvl = datum.levels[j]
    lef = dict(lvl.lefschetz)
    lef[s] = mat
    levels = dict(datum.levels)
    levels[j] = replace(lvl, lefschetz=lef)
    return replace(datum, levels=levels)


def _with_restriction(datum, key, mat):
    restriction = dict(datum.transfers.restriction)
    restriction[key] = mat
    return replace(datum, transfers=replace(datum.transfers, restriction=restriction))


def _with_gysin(datum, key, mat):
    gysin = dict(datum.transfers.gysin)
    gysin[key] = mat
    return replace(datum, transfers=replace(datum.transfers, gysin=gysin))


def _entry_edits(mat, include_zero):
    for r in range(mat.rows):
        for c in range(mat.cols):
            cur = mat.entry(r, c)
            vals = [cur + 1, cur - 1]
            if include_zero and cur != 0:
                vals.append(0)
            for v in vals:
                yield r, c, v


def _candidates(datum, target):
    out = []
    if target in ("rho-squared", "anticommute"):
        for key, mat in sorted(datum.transfers.restriction.items()):
            for r, c, v in _entry_edits(mat, include_zero=True):
                out.append(lambda d, key=key, mat=mat, r=r, c=c, v=v: _with_restriction(
                    d, key, _mat_with_entry(mat, r, c, v)))
    if target in ("tau-squared", "anticommute"):
        for key, mat in sorted(datum.transfers.gysin.items()):
            for r, c, v in _entry_edits(mat, include_zero=True):
                out.append(lambda d, key=key, mat=mat, r=r, c=c, v=v: _with_gysin(
                    d, key, _mat_with_entry(mat, r, c, v)))
    if target in ("adjunction", "poincare"):
        for j in sorted(datum.levels):
            for s, mat in sorted(datum.levels[j].pairings.items()):
                for r, c, v in _entry_edits(mat, include_zero=True):
                    out.append(lambda d, j=j, s=s, mat=mat, r=r, c=c, v=v: _with_pairing(
                        d, j, s, _mat_with_entry(mat, r, c, v)))
    if target in ("lefschetz-commute", "hard-lefschetz"):
        for j in sorted(datum.levels):
            for s, mat in sorted(datum.levels[j].lefschetz.items()):
                for r, c, v in _entry_edits(mat, include_zero=True):
                    out.append(lambda d, j=j, s=s, mat=mat, r=r, c=c, v=v: _with_lefschetz(
                        d, j, s, _mat_with_entry(mat, r, c, v)))
    return out


def _breakable_shapes(datum, target):
    """Cheap necessary condition: the axiom's expressions have nonzero shape."""
    levels = sorted(datum.levels)
    if target == "rho-squared":
        return any(
            datum.h(j, s) and datum.h(j + 1, s) and datum.h(j + 2, s)
            for j in levels
            for s in range(0, 2 * datum.level_dim(j) + 1)
        )
    if target == "tau-squared":
        return any(
            datum.h(j, s) and datum.h(j - 1, s + 2) and datum.h(j - 2, s + 4)
            for j in levels
            for s in range(0, 2 * datum.level_dim(j) + 1)
        )
    if target == "anticommute":
        return any(
            datum.h(j, s)
            and datum.h(j, s + 2)
            and (datum.h(j + 1, s) or datum.h(j - 1, s + 2))
            for j in levels
            if j >= 2
            for s in range(0, 2 * datum.level_dim(j) + 1)
        )
    if target == "adjunction":
        has_transfer = any(
            not m.is_zero() for m in datum.transfers.restriction.values()
        ) or any(not m.is_zero() for m in datum.transfers.gysin.values())
        return has_transfer
    return True


def mutate(datum: SemistableDatum, target: str, seed: int) -> SemistableDatum:
    """A datum differing in one matrix entry on which the target axiom fails.

    Prefers edits breaking only the target axiom; falls back to edits whose
    failure set contains the target.  Raises MutationNotApplicable when no
    single-entry edit can break the target on this datum.
    """
    if target not in AXIOMS:
        raise ParameterError(f"unknown axiom {target!r}; have {AXIOMS}")
    if not _breakable_shapes(datum, target):
        raise MutationNotApplicable(
            f"axiom {target!r} is vacuous on this datum (zero-shaped expressions)"
        )
    candidates = _candidates(datum, target)
    rng = random.Random(seed)
    rng.shuffle(candidates)
    fallback = None
    for make in candidates[:250]:
        mutated = make(datum)
        report = validate(mutated)
        if report.ok:
            continue
        failed = report.failed_axioms
        if failed == (target,):
            return mutated
        if target in failed and fallback is None:
            fallback = mutated
    if fallback is not None:
        return fallback
    raise MutationNotApplicable(
        f"axiom {target!r} cannot be broken on this datum by one entry edit"
    )
