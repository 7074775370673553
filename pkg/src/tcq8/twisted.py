"""The twisted product S^3 x_ad P^m(pi) for pi = Q8, mod 2.

Cells are pairs [s|w] of a Fujii cell s of N^0(2) = S^3/Q8 and a normalized
bar cell w of P^m(pi).  The mod-2 boundary is

    d[s|w] = sum over rule terms (t, L, R) of [t | L w R]  +  [s | d w],

where ``L w R`` acts componentwise.  The rule is data (:class:`BoundaryRule`)
so that transcription variants can be tested against the two gates that any
correct rule must pass: every base cell occurs an even number of times (the
complex must project onto the mod-2 cellular chains of S^3/Q8, whose
boundary vanishes) and d o d = 0.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Sequence

import numpy as np

from . import gf2
from .barres import bar_faces, cochain_x, cochain_y, decode, encode
from .chains import ChainComplex, Cochain, coboundary
from .errors import ConstructionRejected, InvalidParameter
from .fingroup import Group, GroupElement, quaternion_group
from .fujii import FujiiCell, fujii_cells

BASE_CELLS: list[FujiiCell] = [c for cells in fujii_cells(0) for c in cells]
BASE_NAMES: list[str] = [str(c) for c in BASE_CELLS]
BASE_DIMS: list[int] = [c.dim for c in BASE_CELLS]
TOP = "e3"

DEFAULT_FIBER_CUTOFF = 5
DEFAULT_MAX_TOTAL_DIM = 7


# --------------------------------------------------------------------------
# boundary rules


@dataclass(frozen=True)
class Term:
    """Summand [target | L w R] of a boundary formula; words use x, y for the
    generators and X, Y for their inverses."""

    target: str
    left: str = ""
    right: str = ""

    def __str__(self) -> str:
        if not self.left and not self.right:
            return f"[{self.target}|w]"
        return f"[{self.target}|{self.left} w {self.right}]"


@dataclass(frozen=True)
class BoundaryRule:
    """Base part of the twisted boundary, one term list per base cell.

    ``convention`` is ``"as-printed"`` (apply ``w -> L w R``) or
    ``"inverse"`` (apply ``w -> L^-1 w R^-1``, the h w h^-1 orientation of
    the adjoint action).
    """

    terms: tuple[tuple[str, tuple[Term, ...]], ...]
    convention: str = "as-printed"
    label: str = ""
    edits: tuple[str, ...] = ()

    def __post_init__(self):
        if self.convention not in ("as-printed", "inverse"):
            raise InvalidParameter(f"unknown convention {self.convention!r}")
        names = [s for s, _ in self.terms]
        if sorted(names) != sorted(BASE_NAMES):
            raise InvalidParameter("a rule needs exactly one term list per base cell")
        for s, ts in self.terms:
            for t in ts:
                if BASE_DIMS[BASE_NAMES.index(t.target)] != BASE_DIMS[BASE_NAMES.index(s)] - 1:
                    raise InvalidParameter(f"term {t} of {s} has the wrong dimension")

    def for_cell(self, name: str) -> tuple[Term, ...]:
        return dict(self.terms)[name]

    def maps(self, group: Group) -> dict[str, list[tuple[str, list[int]]]]:
        """Per base cell: (target, table of g -> image index)."""
        out = {}
        for s, ts in self.terms:
            rows = []
            for t in ts:
                L, R = group.word(t.left), group.word(t.right)
                if self.convention == "inverse":
                    L, R = group.inv(L), group.inv(R)
                table = [group.index(group.mul(group.mul(L, g), R)) for g in group.elements]
                rows.append((t.target, table))
            out[s] = rows
        return out

    def base_projection(self) -> dict[str, dict[str, int]]:
        """Multiplicity mod 2 of each target cell after forgetting w."""
        out = {}
        for s, ts in self.terms:
            counts: dict[str, int] = {}
            for t in ts:
                counts[t.target] = (counts.get(t.target, 0) + 1) % 2
            out[s] = {k: v for k, v in counts.items() if v}
        return out

    def projects_to_zero(self) -> bool:
        return not any(self.base_projection().values())

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "convention": self.convention,
            "edits": list(self.edits),
            "terms": {s: [str(t) for t in ts] for s, ts in self.terms},
        }

    def __str__(self) -> str:
        lines = [f"rule {self.label or '(unnamed)'} [{self.convention}]"]
        for s, ts in self.terms:
            rhs = " + ".join([str(t) for t in ts] + [f"[{s}|dw]"])
            lines.append(f"  d[{s}|w] = {rhs}")
        return "\n".join(lines)


PRINTED_E22_CONJ = ("YX", "xy")
PROOF_E22_CONJ = ("XY", "xy")


def printed_rule(e3_targets=("e2_1", "e2_2", "e2_1", "e2_1"), e22_conj=PRINTED_E22_CONJ, convention="as-printed", label="verbatim", edits=()) -> BoundaryRule:
    """The mod-2 boundary formulas of the product cells as printed, with
    knobs for the transcription variants."""
    conj3 = [("", ""), ("", ""), ("xY", "yX"), ("X", "x")]
    e3 = tuple(Term(t, l, r) for t, (l, r) in zip(e3_targets, conj3))
    terms = (
        ("e0", ()),
        ("e1_1", (Term("e0"), Term("e0", "X", "x"))),
        ("e1_2", (Term("e0"), Term("e0", "Y", "y"))),
        ("e2_1", (Term("e1_1"), Term("e1_2"), Term("e1_1", "X", "x"), Term("e1_2", "Y", "y"))),
        ("e2_2", (Term("e1_1"), Term("e1_2"), Term("e1_1", *e22_conj), Term("e1_2", "X", "x"))),
        ("e3", e3),
    )
    return BoundaryRule(terms, convention=convention, label=label, edits=tuple(edits))


def rule_variants() -> list[BoundaryRule]:
    """Verbatim rule first, then every documented variant in a fixed order."""
    verbatim_targets = ("e2_1", "e2_2", "e2_1", "e2_1")
    out = []
    for conv in ("as-printed", "inverse"):
        for conj_name, conj in (("statement", PRINTED_E22_CONJ), ("proof", PROOF_E22_CONJ)):
            for targets in product(("e2_1", "e2_2"), repeat=4):
                edits = [
                    f"e3 summand {i + 1} -> {t}" for i, (t, v) in enumerate(zip(targets, verbatim_targets)) if t != v
                ]
                if conj_name == "proof":
                    edits.append("e2_2 conjugator XY w xy")
                if conv == "inverse":
                    edits.append("inverse action convention")
                label = "verbatim" if not edits else "variant:" + "/".join(targets) + f":{conj_name}:{conv}"
                out.append(printed_rule(targets, conj, conv, label, edits))
    out.sort(key=lambda r: len(r.edits))
    return out


# --------------------------------------------------------------------------
# cells


@dataclass(frozen=True, order=True)
class TwistedCell:
    sigma: str
    omega: tuple[GroupElement, ...]

    @property
    def dim(self) -> int:
        return BASE_DIMS[BASE_NAMES.index(self.sigma)] + len(self.omega)

    def __str__(self) -> str:
        return f"[{self.sigma}|" + ",".join(g.short() for g in self.omega) + "]"


class TwistedCells(Sequence):
    """Lazy d-cells, ordered by base cell then lexicographically by w."""

    def __init__(self, group: Group, blocks: list[tuple[int, int, int]]):
        self.group = group
        self.q = group.order - 1
        self.blocks = blocks  # (sigma index, fiber dim, offset)
        self._len = sum(self.q ** f for _, f, _ in blocks)

    def __len__(self) -> int:
        return self._len

    def block_of(self, s: int):
        for b in self.blocks:
            if b[0] == s:
                return b
        return None

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        if i < 0:
            i += len(self)
        for s, f, off in self.blocks:
            if off <= i < off + self.q ** f:
                code = i - off
                digits = []
                for _ in range(f):
                    digits.append(code % self.q + 1)
                    code //= self.q
                return TwistedCell(BASE_NAMES[s], tuple(self.group.elements[k] for k in reversed(digits)))
        raise IndexError(i)

    def index(self, cell: TwistedCell) -> int:
        s = BASE_NAMES.index(cell.sigma)
        b = self.block_of(s)
        if b is None or b[1] != len(cell.omega):
            raise InvalidParameter(f"{cell} is not a cell of this degree")
        code = 0
        for g in cell.omega:
            k = self.group.index(g)
            if k == 0:
                raise InvalidParameter("fiber cells have no identity entries")
            code = code * self.q + (k - 1)
        return b[2] + code

    def __iter__(self):
        return (self[i] for i in range(len(self)))


def _blocks(d: int, fiber_cutoff: int, q: int) -> list[tuple[int, int, int]]:
    out = []
    off = 0
    for s, sd in enumerate(BASE_DIMS):
        f = d - sd
        if 0 <= f <= fiber_cutoff:
            out.append((s, f, off))
            off += q ** f
    return out


class TwistedComplex(ChainComplex):
    def __init__(
        self,
        rule: BoundaryRule,
        fiber_cutoff: int = DEFAULT_FIBER_CUTOFF,
        max_total_dim: int = DEFAULT_MAX_TOTAL_DIM,
        group: Group | None = None,
        validate: bool = True,
    ):
        if fiber_cutoff < 0 or max_total_dim < 0:
            raise InvalidParameter("cut-offs must be >= 0")
        self.group = group or quaternion_group()
        self.rule = rule
        self.fiber_cutoff = fiber_cutoff
        self.q = self.group.order - 1
        self._mul = np.array(self.group.cayley, dtype=np.int64)
        self._maps = {s: [(t, np.array(tab, dtype=np.int64)) for t, tab in rows] for s, rows in rule.maps(self.group).items()}
        top = min(max_total_dim, 3 + fiber_cutoff)
        self.block_table = [_blocks(d, fiber_cutoff, self.q) for d in range(top + 1)]
        cells = [TwistedCells(self.group, b) for b in self.block_table]
        bd = {d: self._boundary_matrix(d) for d in range(1, top + 1)}
        super().__init__(cells, bd, modulus=2, name=f"S3 x_ad P^{fiber_cutoff}Q8 <= {top}", validate=validate)

    def offset(self, d: int, sigma: str | int, f: int) -> int | None:
        s = BASE_NAMES.index(sigma) if isinstance(sigma, str) else sigma
        if d < 0 or d >= len(self.block_table):
            return None
        for bs, bf, off in self.block_table[d]:
            if bs == s and bf == f:
                return off
        return None

    def _boundary_matrix(self, d: int) -> gf2.GF2Matrix:
        q = self.q
        rows, cols = [], []
        for s, f, off in self.block_table[d]:
            n = q ** f
            codes = np.arange(n, dtype=np.int64)
            g = decode(codes, f, q)
            col = off + codes
            if f >= 1:
                base = self.offset(d - 1, s, f - 1)
                for _, valid, face in bar_faces(self._mul, g, q):
                    rows.append(base + face[valid])
                    cols.append(col[valid])
            for target, table in self._maps[BASE_NAMES[s]]:
                base = self.offset(d - 1, target, f)
                img = table[g]
                valid = np.all(img != 0, axis=1) if f else np.ones(n, dtype=bool)
                img = np.where(img == 0, 1, img)
                rows.append(base + encode(img, q))
                cols.append(col)
                if not valid.all():
                    rows[-1] = rows[-1][valid]
                    cols[-1] = cols[-1][valid]
        nr = sum(q ** f for _, f, _ in self.block_table[d - 1])
        nc = sum(q ** f for _, f, _ in self.block_table[d])
        if not rows:
            return gf2.GF2Matrix.zeros(nr, nc)
        return gf2.GF2Matrix.from_pairs(nr, nc, np.concatenate(rows), np.concatenate(cols))

    def cell_str(self, k: int, i: int) -> str:
        return str(self.cells[k][i])

    def parse_cell(self, s: str) -> TwistedCell:
        s = s.strip()
        if not (s.startswith("[") and s.endswith("]") and "|" in s):
            raise InvalidParameter(f"bad twisted cell {s!r}")
        sigma, body = s[1:-1].split("|", 1)
        omega = tuple(self.group.parse_short(t) for t in body.split(",")) if body else ()
        return TwistedCell(sigma, omega)


def build_twisted_complex(fiber_cutoff: int = DEFAULT_FIBER_CUTOFF, max_total_dim: int = DEFAULT_MAX_TOTAL_DIM, rule: BoundaryRule | None = None) -> TwistedComplex:
    return TwistedComplex(rule or resolve_boundary_rule().accepted, fiber_cutoff, max_total_dim)


# --------------------------------------------------------------------------
# cell-by-cell boundary, independent of the matrix builder


def boundary_of_cell(rule: BoundaryRule, group: Group, cell: TwistedCell) -> dict[TwistedCell, int]:
    """Mod-2 boundary of one cell as a dict of cells with coefficient 1."""
    out: dict[TwistedCell, int] = {}

    def add(c):
        if c in out:
            del out[c]
        else:
            out[c] = 1

    w = cell.omega
    for t in rule.for_cell(cell.sigma):
        L, R = group.word(t.left), group.word(t.right)
        if rule.convention == "inverse":
            L, R = group.inv(L), group.inv(R)
        img = tuple(group.mul(group.mul(L, g), R) for g in w)
        if all(g != group.identity for g in img):
            add(TwistedCell(t.target, img))
    n = len(w)
    for i in range(n + 1 if n else 0):
        if i == 0:
            face = w[1:]
        elif i == n:
            face = w[:-1]
        else:
            m = group.mul(w[i - 1], w[i])
            if m == group.identity:
                continue
            face = w[: i - 1] + (m,) + w[i + 1:]
        add(TwistedCell(cell.sigma, face))
    return out


def _verify_chunk(args):
    rule, fiber_cutoff, max_dim, dim, lo, hi, u_support, w_support = args
    group = quaternion_group()
    cells = TwistedCells(group, _blocks(dim, fiber_cutoff, group.order - 1))
    lower = TwistedCells(group, _blocks(dim - 1, fiber_cutoff, group.order - 1))
    u = set(u_support)
    w = set(w_support)
    for i in range(lo, hi):
        c = cells[i]
        total = 0
        for face in boundary_of_cell(rule, group, c):
            total ^= int(lower.index(face) in u)
        if total != int(i in w):
            return i
    return None


def verify_coboundary_directly(cx: TwistedComplex, u: Cochain, w: Cochain) -> bool:
    """Check (delta u)(c) = w(c) on every cell c of degree ``w.dim`` by
    recomputing each boundary from the rule, one cell at a time."""
    if u.dim + 1 != w.dim:
        raise InvalidParameter("degree mismatch")
    n = cx.n_cells(w.dim)
    workers = gf2.worker_count()
    step = max(1, -(-n // workers))
    jobs = [
        (cx.rule, cx.fiber_cutoff, cx.top_dim, w.dim, lo, min(n, lo + step), u.support.tolist(), w.support.tolist())
        for lo in range(0, n, step)
    ]
    if workers == 1:
        results = [_verify_chunk(j) for j in jobs]
    else:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_verify_chunk, jobs))
    return all(r is None for r in results)


# --------------------------------------------------------------------------
# gates and resolution


@dataclass
class RuleCheck:
    rule: BoundaryRule
    base_projection_zero: bool
    d_squared_zero: bool | None = None
    offending_cell: str | None = None

    @property
    def passed(self) -> bool:
        return bool(self.base_projection_zero and self.d_squared_zero)

    def to_dict(self) -> dict:
        return {
            "rule": self.rule.label,
            "edits": list(self.rule.edits),
            "base_projection_zero": self.base_projection_zero,
            "d_squared_zero": self.d_squared_zero,
            "offending_cell": self.offending_cell,
        }


@dataclass
class Resolution:
    checks: list[RuleCheck]
    accepted: BoundaryRule
    survivors: list[BoundaryRule]
    verbatim_passed: bool
    gate_fiber_cutoff: int
    gate_max_dim: int
    survivors_identical: bool = True

    def to_dict(self) -> dict:
        verbatim = self.checks[0]
        return {
            "verbatim_passed": self.verbatim_passed,
            "verbatim_check": verbatim.to_dict(),
            "verbatim_base_projection": {k: v for k, v in verbatim.rule.base_projection().items() if v},
            "accepted": self.accepted.to_dict(),
            "survivors": [r.label for r in self.survivors],
            "survivors_give_identical_complexes": self.survivors_identical,
            "candidates_checked": len(self.checks),
            "gate": {"fiber_cutoff": self.gate_fiber_cutoff, "max_total_dim": self.gate_max_dim},
        }


def check_rule(rule: BoundaryRule, fiber_cutoff: int, max_dim: int) -> RuleCheck:
    chk = RuleCheck(rule, rule.projects_to_zero())
    if not chk.base_projection_zero:
        return chk
    try:
        TwistedComplex(rule, fiber_cutoff, max_dim)
        chk.d_squared_zero = True
    except ConstructionRejected as exc:
        chk.d_squared_zero = False
        k, cell = exc.cell
        chk.offending_cell = str(cell)
    return chk


_RESOLUTION_CACHE: dict[tuple[int, int], Resolution] = {}


def resolve_boundary_rule(fiber_cutoff: int = DEFAULT_FIBER_CUTOFF, max_dim: int = DEFAULT_MAX_TOTAL_DIM) -> Resolution:
    """Test the verbatim rule and every documented variant.

    Candidates passing the base-projection gate are screened for d o d = 0
    on a small complex (fiber cut-off 2) and the survivors checked on the
    full complex through ``max_dim``.
    """
    key = (fiber_cutoff, max_dim)
    if key in _RESOLUTION_CACHE:
        return _RESOLUTION_CACHE[key]
    screen_f = min(2, fiber_cutoff)
    checks = [check_rule(r, screen_f, min(max_dim, 3 + screen_f)) for r in rule_variants()]
    screened = [c for c in checks if c.passed]
    survivors = []
    matrices = []
    for c in screened:
        full = check_rule(c.rule, fiber_cutoff, max_dim)
        c.d_squared_zero = full.d_squared_zero
        c.offending_cell = full.offending_cell
        if full.passed:
            survivors.append(c.rule)
    if not survivors:
        raise ConstructionRejected("no boundary rule variant passes both gates")
    # complexes of all survivors, compared on a small skeleton
    ref = None
    identical = True
    for r in survivors:
        cx = TwistedComplex(r, min(fiber_cutoff, 3), min(max_dim, 6))
        mats = [cx.boundary_mod2(k) for k in range(1, cx.top_dim + 1)]
        if ref is None:
            ref = mats
        elif any(a != b for a, b in zip(ref, mats)):
            identical = False
    res = Resolution(
        checks=checks,
        accepted=replace(survivors[0], label=survivors[0].label),
        survivors=survivors,
        verbatim_passed=checks[0].passed,
        gate_fiber_cutoff=fiber_cutoff,
        gate_max_dim=max_dim,
        survivors_identical=identical,
    )
    _RESOLUTION_CACHE[key] = res
    return res


# --------------------------------------------------------------------------
# cochains on the twisted complex


def top_cell_pullback(cx: TwistedComplex, fiber_cochain: Cochain) -> Cochain:
    """Cochain equal to ``fiber_cochain(w)`` on [e3|w] and zero elsewhere."""
    f = fiber_cochain.dim
    d = BASE_DIMS[BASE_NAMES.index(TOP)] + f
    off = cx.offset(d, TOP, f)
    if off is None:
        raise InvalidParameter(f"complex has no [e3|.] cells with fiber degree {f}")
    return Cochain(cx, d, off + fiber_cochain.support)


def fiber_bar(cx: TwistedComplex, degree: int):
    """Bar complex of the fiber group just large enough to carry cochains of ``degree``."""
    from .barres import BarComplex

    return BarComplex(cx.group, degree)


def target_cocycle_w(cx: TwistedComplex) -> Cochain:
    """w[e3|h1|h2|h3] = x[h1] x[h2] y[h3]; zero on all other 6-cells."""
    if cx.top_dim < 7:
        raise InvalidParameter("the cocycle check needs the complex through degree 7")
    from .barres import cup_all

    bar = fiber_bar(cx, 3)
    x, y = cochain_x(bar), cochain_y(bar)
    w = top_cell_pullback(cx, cup_all(x, x, y))
    if coboundary(w):
        raise ConstructionRejected("w is not a cocycle: the boundary rule is wrong")
    return w


def x_pullback(cx: TwistedComplex) -> Cochain:
    """x[h] on [e3|h], zero elsewhere: the right-hand side of the eqA system."""
    bar = fiber_bar(cx, 1)
    return top_cell_pullback(cx, cochain_x(bar))


def support_hash(c: Cochain) -> str:
    return hashlib.sha256("\n".join(c.labels()).encode()).hexdigest()


@dataclass
class MainSolve:
    fiber_cutoff: int
    w: Cochain
    outcome: gf2.SolveOutcome
    u: Cochain | None
    verified: bool | None
    n_equations: int
    n_unknowns: int
    refuting_cycle: Cochain | None = None
    refutation_verified: bool | None = None

    @property
    def solvable(self) -> bool:
        return self.outcome.solvable

    def to_dict(self) -> dict:
        out = {
            "fiber_cutoff": self.fiber_cutoff,
            "status": self.outcome.status,
            "equations": self.n_equations,
            "unknowns": self.n_unknowns,
            "rank": self.outcome.rank,
            "w_support_size": len(self.w),
            "w_support_sha256": support_hash(self.w),
        }
        if self.u is not None:
            out.update(
                u_support_size=len(self.u),
                u_support_sha256=support_hash(self.u),
                u_verified_by_direct_evaluation=self.verified,
                u_support=self.u.labels(),
            )
        if self.refuting_cycle is not None:
            out.update(
                refuting_cycle_size=len(self.refuting_cycle),
                refuting_cycle_sha256=support_hash(self.refuting_cycle),
                refuting_cycle_verified=self.refutation_verified,
                refuting_cycle=self.refuting_cycle.labels(),
            )
        return out


def refuting_cycle_ok(cx: ChainComplex, z: Cochain, w: Cochain) -> bool:
    """z (read as a chain) is a cycle and w(z) = 1."""
    bd = cx.boundary_mod2(z.dim).matvec(z.to_vector())
    return not bd.any() and int(np.intersect1d(z.support, w.support).size) % 2 == 1


def solve_main(cx: TwistedComplex, refute: bool = False, verify: bool = True) -> MainSolve:
    """Solve delta u = w on the twisted complex."""
    w = target_cocycle_w(cx)
    A = cx.coboundary_mod2(5)
    out = gf2.solve(A, w.to_vector(), refute=refute)
    res = MainSolve(cx.fiber_cutoff, w, out, None, None, A.rows, A.cols)
    if out.solvable:
        res.u = Cochain.from_vector(cx, 5, out.solution)
        if verify:
            res.verified = verify_coboundary_directly(cx, res.u, w)
    elif out.refutation is not None:
        res.refuting_cycle = Cochain.from_vector(cx, 6, out.refutation)
        res.refutation_verified = refuting_cycle_ok(cx, res.refuting_cycle, w)
    return res


@dataclass
class EqASystem:
    augmented: gf2.GF2Matrix
    equations: list[int]
    unknowns: list[int]
    rhs: np.ndarray

    @property
    def coefficients(self) -> gf2.GF2Matrix:
        return self.augmented.select_columns(np.arange(self.augmented.cols - 1))


def eqA_system(cx: TwistedComplex) -> EqASystem:
    """Augmented matrix of delta u' = x-pullback, one row per 4-cell and one
    column per 3-cell met by some boundary, plus the right-hand side."""
    d4 = cx.boundary_mod2(4)
    used = np.unique(d4.indices)
    remap = np.full(cx.n_cells(3), -1, dtype=np.int64)
    remap[used] = np.arange(used.size)
    # entry (4-cell e, variable v) = 1 iff v occurs in d e
    rows = d4.column_indices()
    cols = remap[d4.indices]
    rhs = x_pullback(cx).to_vector()
    nz = np.nonzero(rhs)[0]
    aug = gf2.GF2Matrix.from_pairs(
        cx.n_cells(4),
        used.size + 1,
        np.concatenate([rows, nz]),
        np.concatenate([cols, np.full(nz.size, used.size, dtype=np.int64)]),
    )
    return EqASystem(aug, list(range(cx.n_cells(4))), used.tolist(), rhs)


def solve_eqA(cx: TwistedComplex) -> dict:
    """Solve the eqA system; an inconsistent system comes with a verified
    4-chain z, a cycle in the unknowns, with rhs(z) = 1."""
    sysA = eqA_system(cx)
    out = gf2.solve(sysA.coefficients, sysA.rhs, refute=True)
    res = {
        "status": out.status,
        "equations": sysA.augmented.rows,
        "unknowns": sysA.augmented.cols - 1,
        "rank": out.rank,
        "rhs_support": [cx.cell_str(4, int(i)) for i in np.nonzero(sysA.rhs)[0]],
    }
    if out.solvable:
        u3 = np.zeros(cx.n_cells(3), dtype=np.uint8)
        u3[np.asarray(sysA.unknowns)[out.solution == 1]] = 1
        uc = Cochain.from_vector(cx, 3, u3)
        res["witness"] = uc.labels()
        res["witness_verified"] = coboundary(uc) == x_pullback(cx)
    elif out.refutation is not None:
        z = Cochain.from_vector(cx, 4, out.refutation)
        res["refuting_chain"] = z.labels()
        res["refutation_verified"] = refuting_cycle_ok(cx, z, x_pullback(cx))
    return res
