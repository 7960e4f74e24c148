"""Finite-dimensional left modules and the workhorse functors.

Modules are explicit matrix representations over a certified
:class:`~silting_forge.algebra.Algebra`.  Every operation returns
certificate-carrying data: maps are validated against all basis actions at
construction, decompositions come with mutually inverse splitting maps, and
anything that cannot be decided within its budget raises
:class:`UndecidedError` rather than guessing.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import Algebra, Bimodule, DomainError, ValidationError, derive_algebra
from .exactlinalg import (
    ExactError,
    FieldSpec,
    Matrix,
    in_row_space,
    invert,
    quotient_map,
    rank,
    row_space_basis,
    rref,
    solve,
)


class UndecidedError(ExactError):
    """A search exhausted its budget without reaching a certified answer."""


DECOMPOSE_BUDGET = 4096       # max field-element combinations scanned exhaustively
ISO_BUDGET = 65536            # max combinations tried in isomorphism search
ENUMERATION_BUDGET = 1 << 21  # max action fillings per algebra enumeration


# ---------------------------------------------------------------------------
# Module / ModuleMap / Presentation
# ---------------------------------------------------------------------------


class Module:
    """A left module given by one action matrix per algebra basis element."""

    def __init__(self, algebra: Algebra, dim: int, action: dict[str, Matrix]):
        self.algebra = algebra
        self.dim = dim
        self.action = dict(action)
        violations = self._violations()
        if violations:
            raise ValidationError(
                "module action violates the structure constants: " + "; ".join(violations[:5]),
                violations=violations,
            )
        self._adapted = None
        self._radical_cols = None

    def _violations(self) -> list[str]:
        a, f, n = self.algebra, self.algebra.field, self.dim
        out = []
        if set(self.action) != set(a.labels):
            return [f"action keys {sorted(self.action)} do not match basis labels {sorted(a.labels)}"]
        for lbl, m in self.action.items():
            if m.nrows != n or m.ncols != n:
                return [f"action of {lbl!r} is {m.nrows}x{m.ncols}, expected {n}x{n}"]
        if n == 0:
            return out
        mats = [self.action[lbl] for lbl in a.labels]
        unit = Matrix.zeros(f, n, n)
        for i, c in enumerate(a.unit()):
            if c != 0:
                unit = unit + mats[i].scale(c)
        if unit != Matrix.identity(f, n):
            out.append("unit does not act as the identity")
        for i in range(a.dim):
            for j in range(a.dim):
                expected = Matrix.zeros(f, n, n)
                for k, c in enumerate(a.constants[i][j]):
                    if c != 0:
                        expected = expected + mats[k].scale(c)
                if mats[i].mul(mats[j]) != expected:
                    out.append(f"rho({a.labels[i]})·rho({a.labels[j]}) != rho({a.labels[i]}*{a.labels[j]})")
        return out

    def rho(self, label: str) -> Matrix:
        return self.action[label]

    def act(self, vec: list) -> Matrix:
        """Action matrix of a general algebra element (coefficient vector)."""
        f = self.algebra.field
        out = Matrix.zeros(f, self.dim, self.dim)
        for i, c in enumerate(vec):
            if c != 0:
                out = out + self.action[self.algebra.labels[i]].scale(c)
        return out

    def is_zero(self) -> bool:
        return self.dim == 0

    def dimension_vector(self) -> dict[str, int]:
        """dim e_v·M per distinguished idempotent, in idempotent order."""
        return {lbl: rank(self.act(vec)) for lbl, vec in self.algebra.idempotents}

    def radical_columns(self) -> Matrix:
        """Canonical column basis of rad(A)·M."""
        if self._radical_cols is None:
            f = self.algebra.field
            rows = []
            for r in self.algebra.radical_rows.data:
                rows.extend(self.act(list(r)).transpose().data)
            self._radical_cols = row_space_basis(rows, f, self.dim).transpose()
        return self._radical_cols

    def adapted(self) -> "AdaptedModule":
        if self._adapted is None:
            self._adapted = _adapt(self)
        return self._adapted

    def encode(self) -> str:
        """Deterministic content string (used for ordering and caching)."""
        f = self.algebra.field
        payload = [[lbl, [[f.to_str(x) for x in row] for row in self.action[lbl].data]] for lbl in self.algebra.labels]
        return json.dumps({"dim": self.dim, "action": payload}, sort_keys=True)

    def __repr__(self):
        return f"Module(dim={self.dim} over {self.algebra.provenance} algebra of dim {self.algebra.dim})"


@dataclass
class AdaptedModule:
    """Change of basis making every idempotent act as a coordinate projection."""

    blocks: dict[str, tuple[int, int]]  # idempotent label -> (start, stop)
    to_adapted: Matrix                  # S^-1
    from_adapted: Matrix                # S
    action: dict[str, Matrix]           # adapted matrices for generator seeds


def _adapt(m: Module) -> AdaptedModule:
    f = m.algebra.field
    cols: list[list] = []
    blocks: dict[str, tuple[int, int]] = {}
    for lbl, vec in m.algebra.idempotents:
        proj = m.act(vec)
        reduced, r, _ = rref(proj.transpose())
        start = len(cols)
        for i in range(r):
            cols.append(list(reduced.data[i]))
        blocks[lbl] = (start, len(cols))
    if len(cols) != m.dim:
        raise ValidationError("idempotent images do not decompose the module")
    S = Matrix(f, [[cols[j][i] for j in range(m.dim)] for i in range(m.dim)], m.dim, m.dim)
    Sinv = invert(S)
    if Sinv is None:
        raise ValidationError("idempotent block bases are dependent")
    gen = m.algebra.generating_set()
    action = {}
    for name, vec, _blk in gen.seeds:
        action[name] = Sinv.mul(m.act(vec)).mul(S)
    return AdaptedModule(blocks, Sinv, S, action)


class ModuleMap:
    """A homomorphism of left modules, validated against every basis action."""

    def __init__(self, source: Module, target: Module, matrix: Matrix, check: bool = True):
        if matrix.nrows != target.dim or matrix.ncols != source.dim:
            raise ValidationError(
                f"map matrix is {matrix.nrows}x{matrix.ncols}, expected {target.dim}x{source.dim}"
            )
        if source.algebra is not target.algebra and source.algebra.content_hash() != target.algebra.content_hash():
            raise ValidationError("source and target live over different algebras")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check:
            for lbl in source.algebra.labels:
                if matrix.mul(source.action[lbl]) != target.action[lbl].mul(matrix):
                    raise ValidationError(f"map does not commute with the action of {lbl!r}")

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self ∘ other (apply other first)."""
        if other.target is not self.source and other.target.dim != self.source.dim:
            raise ValidationError("composition mismatch")
        return ModuleMap(other.source, self.target, self.matrix.mul(other.matrix), check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix + other.matrix, check=False)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix.scale(c), check=False)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def is_surjective(self) -> bool:
        return rank(self.matrix) == self.target.dim

    def is_injective(self) -> bool:
        return rank(self.matrix) == self.source.dim

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and rank(self.matrix) == self.source.dim

    def __repr__(self):
        return f"ModuleMap({self.source.dim} -> {self.target.dim})"


@dataclass
class Presentation:
    """A two-term presentation by modules of a certified kind.

    ``map`` is sigma: P_1 -> P_0; ``cokernel`` with ``coker_map`` (P_0 ->
    cokernel) witnesses coker(sigma).  ``certificates`` records the checks
    performed when the presentation was built.
    """

    kind: str  # "projective" | "gorenstein_projective"
    map: ModuleMap
    cokernel: Module
    coker_map: ModuleMap
    certificates: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("projective", "gorenstein_projective"):
            raise ValidationError(f"unknown presentation kind {self.kind!r}")
        # exactness at P_0: im(map) = ker(coker_map), and coker_map onto
        if not self.coker_map.is_surjective():
            raise ValidationError("cokernel map is not surjective")
        if not self.coker_map.matrix.mul(self.map.matrix).is_zero():
            raise ValidationError("coker_map ∘ map is nonzero")
        if rank(self.map.matrix) + self.cokernel.dim != self.map.target.dim:
            raise ValidationError("cokernel dimension does not match the map's image")


# ---------------------------------------------------------------------------
# Construction helpers
# ---------------------------------------------------------------------------


def validate_module(alg: Algebra, actions: dict[str, Matrix]) -> Module:
    """Check the structure-constant identities and return the module.

    Raises a :class:`ValidationError` carrying the list of violated
    identities in ``diagnostics['violations']`` when invalid.
    """
    dims = {m.nrows for m in actions.values()} | {m.ncols for m in actions.values()}
    dim = dims.pop() if len(dims) == 1 else None
    if dim is None:
        raise ValidationError("action matrices must all be square of one size")
    return Module(alg, dim, actions)


def zero_module(alg: Algebra) -> Module:
    z = Matrix.zeros(alg.field, 0, 0)
    return Module(alg, 0, {lbl: z for lbl in alg.labels})


def regular_module(alg: Algebra) -> Module:
    return Module(alg, alg.dim, {lbl: alg.left_mult_matrix(alg.basis_vector(i)) for i, lbl in enumerate(alg.labels)})


def submodule(m: Module, cols: Matrix) -> tuple[Module, ModuleMap]:
    """Submodule spanned by the given (independent) columns, with inclusion."""
    f = m.algebra.field
    k = cols.ncols
    if rank(cols) != k:
        raise ValidationError("submodule columns are dependent")
    action = {}
    for lbl in m.algebra.labels:
        rhs = m.action[lbl].mul(cols)
        x, _ = solve(cols, rhs)
        if x is None:
            raise ValidationError(f"columns are not stable under the action of {lbl!r}")
        action[lbl] = x
    sub = Module(m.algebra, k, action)
    return sub, ModuleMap(sub, m, cols)


def quotient_module(m: Module, cols: Matrix) -> tuple[Module, ModuleMap]:
    """Quotient of m by the action-stable column span, with projection."""
    f = m.algebra.field
    basis_rows = row_space_basis([c for c in cols.transpose().data], f, m.dim)
    proj, _keep = quotient_map(basis_rows, m.dim)
    q = proj.nrows
    section, _ = solve(proj, Matrix.identity(f, q))
    if section is None:
        raise ValidationError("projection has no section")
    action = {lbl: proj.mul(m.action[lbl]).mul(section) for lbl in m.algebra.labels}
    quo = Module(m.algebra, q, action)
    return quo, ModuleMap(m, quo, proj)


def map_spaces(fmap: ModuleMap) -> dict:
    """Kernel, image, and cokernel of a map, each with its witness map."""
    f = fmap.source.algebra.field
    _, nullbasis = solve(fmap.matrix, Matrix.zeros(f, fmap.matrix.nrows, 1))
    if nullbasis:
        kcols = Matrix.hstack(nullbasis)
    else:
        kcols = Matrix.zeros(f, fmap.source.dim, 0)
    kernel, kinc = submodule(fmap.source, kcols)
    img_rows = row_space_basis(fmap.matrix.transpose().data, f, fmap.target.dim)
    icols = img_rows.transpose()
    image, iinc = submodule(fmap.target, icols)
    coker, cproj = quotient_module(fmap.target, icols)
    assert kernel.dim + image.dim == fmap.source.dim
    return {
        "kernel": (kernel, kinc),
        "image": (image, iinc),
        "cokernel": (coker, cproj),
    }


def direct_sum(parts: list[Module], algebra: Algebra | None = None) -> tuple[Module, list[ModuleMap], list[ModuleMap]]:
    """Block-diagonal sum with canonical injections and projections."""
    if not parts:
        if algebra is None:
            raise ValidationError("empty direct sum needs an explicit algebra")
        return zero_module(algebra), [], []
    alg = parts[0].algebra
    for p in parts[1:]:
        if p.algebra is not alg and p.algebra.content_hash() != alg.content_hash():
            raise ValidationError("direct sum of modules over different algebras")
    f = alg.field
    total = sum(p.dim for p in parts)
    action = {}
    for lbl in alg.labels:
        action[lbl] = Matrix.block_diag(f, [p.action[lbl] for p in parts])
    whole = Module(alg, total, action)
    injections, projections = [], []
    offset = 0
    for p in parts:
        inj = Matrix.zeros(f, total, p.dim)
        proj = Matrix.zeros(f, p.dim, total)
        for i in range(p.dim):
            inj.data[offset + i][i] = f.one()
            proj.data[i][offset + i] = f.one()
        injections.append(ModuleMap(p, whole, inj, check=False))
        projections.append(ModuleMap(whole, p, proj, check=False))
        offset += p.dim
    return whole, injections, projections


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------


def hom_space(m: Module, n: Module) -> list[ModuleMap]:
    """Deterministic basis of Hom(m, n).

    Solved in idempotent-adapted coordinates: the idempotent conditions say
    the unknown matrix is block diagonal along the vertex decomposition, and
    only the radical generators contribute genuine linear equations (they
    generate the algebra together with the idempotents — certified).
    """
    if m.algebra is not n.algebra and m.algebra.content_hash() != n.algebra.content_hash():
        raise ValidationError("hom_space needs modules over the same algebra")
    alg = m.algebra
    f = alg.field
    if m.dim == 0 or n.dim == 0:
        return []
    am, an = m.adapted(), n.adapted()
    gen = alg.generating_set()
    positions: list[tuple[int, int]] = []
    for lbl, _vec in alg.idempotents:
        r0, r1 = an.blocks[lbl]
        c0, c1 = am.blocks[lbl]
        for r in range(r0, r1):
            for c in range(c0, c1):
                positions.append((r, c))
    if not positions:
        return []
    pos_index = {rc: t for t, rc in enumerate(positions)}
    rows = []
    for name, _vec, _blk in gen.radical_seeds():
        gm = am.action[name]
        gn = an.action[name]
        # every entry of the commutator H·gm - gn·H must vanish
        for a_ in range(n.dim):
            for b_ in range(m.dim):
                row = [f.zero()] * len(positions)
                nonzero = False
                for (rr, cc), t in pos_index.items():
                    coeff = f.zero()
                    if rr == a_ and gm.data[cc][b_] != 0:
                        coeff = f.add(coeff, gm.data[cc][b_])
                    if cc == b_ and gn.data[a_][rr] != 0:
                        coeff = f.sub(coeff, gn.data[a_][rr])
                    if coeff != 0:
                        row[t] = coeff
                        nonzero = True
                if nonzero:
                    rows.append(row)
    if rows:
        system = Matrix(f, rows, len(rows), len(positions))
        _, nullbasis = solve(system, Matrix.zeros(f, len(rows), 1))
    else:
        nullbasis = [Matrix.column(f, [f.one() if i == t else f.zero() for i in range(len(positions))]) for t in range(len(positions))]
    maps = []
    for vec in nullbasis:
        H = Matrix.zeros(f, n.dim, m.dim)
        for t, (rr, cc) in enumerate(positions):
            H.data[rr][cc] = vec.data[t][0]
        full = an.from_adapted.mul(H).mul(am.to_adapted)
        maps.append(ModuleMap(m, n, full))
    return maps


def hom_dim(m: Module, n: Module) -> int:
    return len(hom_space(m, n))


# ---------------------------------------------------------------------------
# Projectives, covers, presentations
# ---------------------------------------------------------------------------


def indecomposable_projectives(alg: Algebra) -> list[tuple[Module, str]]:
    """P(v) = A·e_v with left multiplication, in idempotent order."""
    f = alg.field
    out = []
    for lbl, evec in alg.idempotents:
        gens = [alg.multiply(alg.basis_vector(i), evec) for i in range(alg.dim)]
        cols = row_space_basis(gens, f, alg.dim).transpose()
        reg = regular_module(alg)
        sub, _ = submodule(reg, cols)
        out.append((sub, lbl))
    return out


def simple_module(alg: Algebra, idem_label: str) -> Module:
    """S(v) = P(v) / rad·P(v)."""
    projs = {lbl: mod for mod, lbl in indecomposable_projectives(alg)}
    p = projs[idem_label]
    quo, _ = quotient_module(p, p.radical_columns())
    return quo


def top_generators(m: Module) -> list[tuple[str, Matrix]]:
    """Per-vertex lifts of a basis of m / rad·m, as (idempotent label, column)."""
    f = m.algebra.field
    radm = m.radical_columns()
    rad_rows = [list(r) for r in radm.transpose().data]
    out = []
    span_rows = list(rad_rows)
    for lbl, evec in m.algebra.idempotents:
        proj = m.act(evec)
        for j in range(m.dim):
            col = [proj.data[i][j] for i in range(m.dim)]
            if all(x == 0 for x in col):
                continue
            if in_row_space(col, row_space_basis(span_rows, f, m.dim)):
                continue
            span_rows.append(col)
            out.append((lbl, Matrix.column(f, col)))
    return out


def projective_cover(m: Module) -> tuple[Module, ModuleMap, list[str]]:
    """(P, pi, vertex labels) with pi: P -> m surjective and ker(pi) ⊆ rad P."""
    alg = m.algebra
    f = alg.field
    if m.dim == 0:
        z = zero_module(alg)
        return z, ModuleMap(z, m, Matrix.zeros(f, 0, 0), check=False), []
    projs = {lbl: mod for mod, lbl in indecomposable_projectives(alg)}
    proj_basis_cols: dict[str, Matrix] = {}
    reg = regular_module(alg)
    incl: dict[str, Matrix] = {}
    for lbl, evec in alg.idempotents:
        gens = [alg.multiply(alg.basis_vector(i), evec) for i in range(alg.dim)]
        incl[lbl] = row_space_basis(gens, f, alg.dim).transpose()
    gens = top_generators(m)
    parts = [projs[lbl] for lbl, _ in gens]
    P, injections, _ = direct_sum(parts, algebra=alg)
    blocks = []
    for (lbl, w), part in zip(gens, parts):
        # map P(lbl) -> m : q |-> rho_m(q)·w, where q runs over the basis
        # columns of P(lbl) inside the regular module
        cols = []
        for t in range(part.dim):
            qvec = [incl[lbl].data[i][t] for i in range(alg.dim)]
            img = m.act(qvec).mul(w)
            cols.append([img.data[i][0] for i in range(m.dim)])
        blocks.append(Matrix(f, [[cols[j][i] for j in range(part.dim)] for i in range(m.dim)], m.dim, part.dim))
    pi_matrix = Matrix.hstack(blocks) if blocks else Matrix.zeros(f, m.dim, 0)
    pi = ModuleMap(P, m, pi_matrix)
    if not pi.is_surjective():
        raise ValidationError("projective cover construction failed surjectivity")
    # minimality: ker(pi) ⊆ rad·P
    _, nullbasis = solve(pi_matrix, Matrix.zeros(f, m.dim, 1))
    radP_rows = row_space_basis([list(r) for r in P.radical_columns().transpose().data], f, P.dim)
    for v in nullbasis:
        if not in_row_space([v.data[i][0] for i in range(P.dim)], radP_rows):
            raise ValidationError("projective cover is not minimal (kernel escapes the radical)")
    return P, pi, [lbl for lbl, _ in gens]


def is_projective(m: Module) -> bool:
    if m.dim == 0:
        return True
    P, _, _ = projective_cover(m)
    return P.dim == m.dim


def projective_dimension(m: Module, bound: int = 10) -> int | None:
    """Length of the minimal projective resolution, or None beyond ``bound``.

    Iterates minimal syzygies: pd(m) = d exactly when the d-th syzygy is
    projective, and minimality of each cover makes the syzygy sequence
    canonical, so the first projective syzygy gives the dimension.
    """
    f = m.algebra.field
    current = m
    for d in range(bound + 1):
        cover, pi, _ = projective_cover(current)
        if cover.dim == current.dim:
            return d
        _, nullbasis = solve(pi.matrix, Matrix.zeros(f, current.dim, 1))
        kcols = Matrix.hstack(nullbasis) if nullbasis else Matrix.zeros(f, cover.dim, 0)
        current, _ = submodule(cover, kcols)
    return None


def global_dimension(alg: Algebra, bound: int = 10) -> int | None:
    """Max projective dimension over the simple modules, or None beyond bound."""
    worst = 0
    for lbl, _ in alg.idempotents:
        pd = projective_dimension(simple_module(alg, lbl), bound)
        if pd is None:
            return None
        worst = max(worst, pd)
    return worst


def minimal_projective_presentation(m: Module) -> Presentation:
    """P_1 --sigma--> P_0 --pi--> m -> 0 with both terms minimal."""
    P0, pi, labels0 = projective_cover(m)
    f = m.algebra.field
    _, nullbasis = solve(pi.matrix, Matrix.zeros(f, m.dim, 1))
    kcols = Matrix.hstack(nullbasis) if nullbasis else Matrix.zeros(f, P0.dim, 0)
    K, kinc = submodule(P0, kcols)
    P1, psi, labels1 = projective_cover(K)
    sigma = kinc.compose(psi)
    return Presentation(
        kind="projective",
        map=ModuleMap(P1, P0, sigma.matrix),
        cokernel=m,
        coker_map=pi,
        certificates={
            "cover_vertices": labels0,
            "syzygy_vertices": labels1,
            "minimal_at_p0": True,
            "minimal_at_p1": True,
        },
    )


def ext_dim(m: Module, n: Module, i: int, bound: int = 10) -> int:
    """dim Ext^i(m, n) from a minimal projective resolution of m."""
    if i < 1:
        raise ValidationError("ext_dim needs i >= 1")
    alg = m.algebra
    # build resolution ... -> P_2 -> P_1 -> P_0 -> m
    terms: list[Module] = []
    maps: list[ModuleMap] = []  # maps[t]: P_{t+1} -> P_t
    pres = minimal_projective_presentation(m)
    terms = [pres.map.target, pres.map.source]
    maps = [pres.map]
    current_map = pres.map
    while len(terms) <= i + 1:
        if terms[-1].dim == 0:
            break
        if len(terms) > bound:
            raise DomainError(f"projective resolution exceeded length bound {bound}")
        f = alg.field
        _, nullbasis = solve(current_map.matrix, Matrix.zeros(f, current_map.target.dim, 1))
        kcols = Matrix.hstack(nullbasis) if nullbasis else Matrix.zeros(f, current_map.source.dim, 0)
        K, kinc = submodule(current_map.source, kcols)
        P_next, psi, _ = projective_cover(K)
        nxt = ModuleMap(P_next, current_map.source, kinc.compose(psi).matrix)
        terms.append(P_next)
        maps.append(nxt)
        current_map = nxt
    # Hom complex dimensions; zero beyond the resolution's end
    def hom_basis(t: int) -> list[ModuleMap]:
        return hom_space(terms[t], n) if t < len(terms) and terms[t].dim > 0 else []

    def delta_rank(t: int) -> int:
        """rank of Hom(P_t, n) -> Hom(P_{t+1}, n), f |-> f ∘ maps[t]."""
        if t + 1 >= len(terms) or terms[t + 1].dim == 0 or terms[t].dim == 0:
            return 0
        src_basis = hom_basis(t)
        tgt_basis = hom_basis(t + 1)
        if not src_basis or not tgt_basis:
            return 0
        f = alg.field
        # express each composite in the target basis
        tgt_mat = Matrix(
            f,
            [[b.matrix.data[r][c] for b in tgt_basis] for r in range(n.dim) for c in range(terms[t + 1].dim)],
            n.dim * terms[t + 1].dim,
            len(tgt_basis),
        )
        cols = []
        for b in src_basis:
            comp = b.matrix.mul(maps[t].matrix)
            cols.append([comp.data[r][c] for r in range(n.dim) for c in range(terms[t + 1].dim)])
        rhs = Matrix(f, [[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))], len(cols[0]), len(cols))
        x, _ = solve(tgt_mat, rhs)
        if x is None:
            raise ValidationError("Hom complex composite escaped the Hom basis")
        return rank(x)

    dim_hom_i = len(hom_basis(i))
    if dim_hom_i == 0:
        return 0
    return dim_hom_i - delta_rank(i) - delta_rank(i - 1)


# ---------------------------------------------------------------------------
# AR translate
# ---------------------------------------------------------------------------


def _hom_to_regular_as_op_module(p: Module) -> tuple[Module, list[ModuleMap], Algebra]:
    """Hom_A(p, A) as a left module over A^op, with its Hom basis."""
    alg = p.algebra
    reg = regular_module(alg)
    basis = hom_space(p, reg)
    aop, _ = derive_algebra(alg, "opposite")
    f = alg.field
    h = len(basis)
    action: dict[str, Matrix] = {}
    if h == 0:
        z = Matrix.zeros(f, 0, 0)
        return Module(aop, 0, {lbl: z for lbl in aop.labels}), [], aop
    flat = Matrix(
        f,
        [[b.matrix.data[r][c] for b in basis] for r in range(alg.dim) for c in range(p.dim)],
        alg.dim * p.dim,
        h,
    )
    action_mats = []
    for i, lbl in enumerate(alg.labels):
        # (a · f)(x) = f(x) · a  — right multiplication on values
        ra = alg.right_mult_matrix(alg.basis_vector(i))
        cols = []
        for b in basis:
            comp = ra.mul(b.matrix)
            cols.append([comp.data[r][c] for r in range(alg.dim) for c in range(p.dim)])
        rhs = Matrix(f, [[cols[j][t] for j in range(h)] for t in range(alg.dim * p.dim)], alg.dim * p.dim, h)
        x, _ = solve(flat, rhs)
        if x is None:
            raise ValidationError("right action escaped the Hom basis")
        action_mats.append(x)
    for i, lbl in enumerate(aop.labels):
        action[lbl] = action_mats[i]
    return Module(aop, h, action), basis, aop


def ar_translate(m: Module) -> Module:
    """tau(m) = D Tr(m) via the minimal projective presentation."""
    alg = m.algebra
    f = alg.field
    pres = minimal_projective_presentation(m)
    p1, p0 = pres.map.source, pres.map.target
    hom0, basis0, aop = _hom_to_regular_as_op_module(p0)
    hom1, basis1, _ = _hom_to_regular_as_op_module(p1)
    if hom1.dim == 0:
        return zero_module(alg)
    # Hom(sigma, A): Hom(P_0, A) -> Hom(P_1, A), f -> f ∘ sigma
    if hom0.dim == 0:
        tr = hom1
    else:
        flat1 = Matrix(
            f,
            [[b.matrix.data[r][c] for b in basis1] for r in range(alg.dim) for c in range(p1.dim)],
            alg.dim * p1.dim,
            hom1.dim,
        )
        cols = []
        for b in basis0:
            comp = b.matrix.mul(pres.map.matrix)
            cols.append([comp.data[r][c] for r in range(alg.dim) for c in range(p1.dim)])
        rhs = Matrix(f, [[cols[j][t] for j in range(hom0.dim)] for t in range(alg.dim * p1.dim)], alg.dim * p1.dim, hom0.dim)
        x, _ = solve(flat1, rhs)
        if x is None:
            raise ValidationError("Hom(sigma, A) escaped the Hom basis")
        hom_sigma = ModuleMap(hom0, hom1, x)
        tr, _proj = map_spaces(hom_sigma)["cokernel"]
    # dual over the opposite: left A-module with rho(b) = rho_Tr(b)^T
    action = {lbl: tr.action[lbl].transpose() for lbl in tr.algebra.labels}
    # tr.algebra is A^op with the same labels as A
    return Module(alg, tr.dim, action)


# ---------------------------------------------------------------------------
# Tensor functors
# ---------------------------------------------------------------------------


def tensor_over_algebra(n: Bimodule, y: Module) -> tuple[Module, dict]:
    """N ⊗_B Y with the induced left action of N's left algebra."""
    B = n.right_alg
    if y.algebra is not B and y.algebra.content_hash() != B.content_hash():
        raise ValidationError("module is not over the bimodule's right algebra")
    A = n.left_alg
    f = A.field
    dn, dy = n.dim, y.dim
    big = dn * dy
    if big == 0:
        z = zero_module(A)
        return z, {"projection": Matrix.zeros(f, 0, big)}
    rel_rows = []
    for b_idx, b_lbl in enumerate(B.labels):
        rn = n.right_action[b_lbl]
        ry = y.action[b_lbl]
        for i in range(dn):
            for j in range(dy):
                vec = [f.zero()] * big
                for mrow in range(dn):
                    if rn.data[mrow][i] != 0:
                        vec[mrow * dy + j] = f.add(vec[mrow * dy + j], rn.data[mrow][i])
                for t in range(dy):
                    if ry.data[t][j] != 0:
                        vec[i * dy + t] = f.sub(vec[i * dy + t], ry.data[t][j])
                if any(x != 0 for x in vec):
                    rel_rows.append(vec)
    rel = row_space_basis(rel_rows, f, big)
    proj, _keep = quotient_map(rel, big)
    q = proj.nrows
    section, _ = solve(proj, Matrix.identity(f, q))
    if section is None:
        raise ValidationError("tensor quotient has no section")
    action = {}
    for a_idx, a_lbl in enumerate(A.labels):
        la = n.left_action[a_lbl]
        big_mat = la.kron(Matrix.identity(f, dy))
        action[a_lbl] = proj.mul(big_mat).mul(section)
    mod = Module(A, q, action)
    return mod, {"projection": proj}


def tensor_over_field(m: Module, s: Module, tensor_alg: Algebra | None = None) -> Module:
    """m ⊗_k s as a module over the tensor product algebra."""
    A, B = m.algebra, s.algebra
    if A.field != B.field:
        raise ValidationError("tensor factors live over different fields")
    if tensor_alg is None:
        tensor_alg, _ = derive_algebra(A, "tensor", b=B)
    action = {}
    for i, la in enumerate(A.labels):
        for j, lb in enumerate(B.labels):
            action[f"{la}(x){lb}"] = m.action[la].kron(s.action[lb])
    return Module(tensor_alg, m.dim * s.dim, action)


# ---------------------------------------------------------------------------
# Approximations
# ---------------------------------------------------------------------------


def right_add_approximation(x: Module, m: Module) -> ModuleMap:
    """Evaluation map x^{dim Hom(x, m)} -> m; right Add(x)-approximation."""
    basis = hom_space(x, m)
    parts = [x] * len(basis)
    source, _, _ = direct_sum(parts, algebra=x.algebra)
    f = x.algebra.field
    if not basis:
        return ModuleMap(source, m, Matrix.zeros(f, m.dim, 0), check=False)
    matrix = Matrix.hstack([b.matrix for b in basis])
    return ModuleMap(source, m, matrix)


# ---------------------------------------------------------------------------
# Minimal polynomial and factor-driven splitting
# ---------------------------------------------------------------------------


def _min_poly(mat: Matrix) -> list:
    """Monic minimal polynomial coefficients [c_0, ..., c_{k-1}, 1]."""
    f = mat.field
    d = mat.nrows
    if d == 0:
        return [f.one()]
    powers = [Matrix.identity(f, d)]
    flat_rows = []
    while True:
        vec = [powers[-1].data[i][j] for i in range(d) for j in range(d)]
        span = row_space_basis(flat_rows, f, d * d)
        if in_row_space(vec, span):
            break
        flat_rows.append(vec)
        powers.append(powers[-1].mul(mat))
    k = len(flat_rows)
    A = Matrix(f, [[flat_rows[t][i] for t in range(k)] for i in range(d * d)], d * d, k)
    b = Matrix.column(f, [powers[k].data[i][j] for i in range(d) for j in range(d)])
    x, _ = solve(A, b)
    coeffs = [f.neg(x.data[t][0]) for t in range(k)]
    coeffs.append(f.one())
    return coeffs


def _factor_poly(coeffs: list, field: FieldSpec) -> list[tuple[list, int]]:
    """Factor a monic polynomial; returns [(irreducible coeffs, multiplicity)]."""
    import sympy

    x = sympy.Symbol("x")
    if field.kind == "prime":
        expr = sum(int(c) * x**i for i, c in enumerate(coeffs))
        poly = sympy.Poly(expr, x, modulus=field.p)
    else:
        expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(coeffs))
        poly = sympy.Poly(expr, x, domain=sympy.QQ)
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        cs = fac.all_coeffs()[::-1]  # ascending
        lead = cs[-1]
        norm = []
        for c in cs:
            if field.kind == "prime":
                norm.append(field.coerce(int(c) * pow(int(lead), -1, field.p)))
            else:
                norm.append(field.coerce(Fraction(sympy.Rational(c, lead).p, sympy.Rational(c, lead).q)))
        out.append((norm, int(mult)))
    return out


def _eval_poly(coeffs: list, mat: Matrix) -> Matrix:
    f = mat.field
    d = mat.nrows
    out = Matrix.zeros(f, d, d)
    power = Matrix.identity(f, d)
    for c in coeffs:
        if c != 0:
            out = out + power.scale(c)
        power = power.mul(mat)
    return out


def _poly_power(coeffs: list, e: int, field: FieldSpec) -> list:
    out = [field.one()]
    for _ in range(e):
        nxt = [field.zero()] * (len(out) + len(coeffs) - 1)
        for i, a in enumerate(out):
            if a == 0:
                continue
            for j, b in enumerate(coeffs):
                if b != 0:
                    nxt[i + j] = field.add(nxt[i + j], field.mul(a, b))
        out = nxt
    return out


def _split_from_endomorphism(m: Module, emat: Matrix) -> tuple[Matrix, Matrix] | None:
    """If the endomorphism's minimal polynomial has >= 2 coprime primary
    parts, return column bases of the corresponding kernel decomposition."""
    f = m.algebra.field
    coeffs = _min_poly(emat)
    factors = _factor_poly(coeffs, f)
    if len(factors) < 2:
        return None
    g = _poly_power(factors[0][0], factors[0][1], f)
    h = [f.one()]
    for fac, mult in factors[1:]:
        part = _poly_power(fac, mult, f)
        nxt = [f.zero()] * (len(h) + len(part) - 1)
        for i, a in enumerate(h):
            if a == 0:
                continue
            for j, b in enumerate(part):
                if b != 0:
                    nxt[i + j] = f.add(nxt[i + j], f.mul(a, b))
        h = nxt
    gmat, hmat = _eval_poly(g, emat), _eval_poly(h, emat)
    _, kg = solve(gmat, Matrix.zeros(f, m.dim, 1))
    _, kh = solve(hmat, Matrix.zeros(f, m.dim, 1))
    if not kg or not kh:
        return None
    cols_g = Matrix.hstack(kg)
    cols_h = Matrix.hstack(kh)
    if cols_g.ncols + cols_h.ncols != m.dim:
        return None
    return cols_g, cols_h


def _structured_candidates(field: FieldSpec, h: int):
    """Single basis elements, then pairwise sums and differences."""
    one, zero = field.one(), field.zero()
    for i in range(h):
        vec = [zero] * h
        vec[i] = one
        yield tuple(vec)
    for i in range(h):
        for j in range(i + 1, h):
            vec = [zero] * h
            vec[i] = one
            vec[j] = one
            yield tuple(vec)
            vec2 = [zero] * h
            vec2[i] = one
            vec2[j] = field.neg(one)
            yield tuple(vec2)


def _fitting_split(m: Module, emat: Matrix) -> tuple[Matrix, Matrix] | None:
    """ker(e^dim) ⊕ im(e^dim); nontrivial iff e is neither nilpotent nor
    invertible."""
    f = m.algebra.field
    stable = emat.power(m.dim)
    _, kb = solve(stable, Matrix.zeros(f, m.dim, 1))
    img_rows = row_space_basis(stable.transpose().data, f, m.dim)
    if not kb or img_rows.nrows == 0:
        return None
    cols_k = Matrix.hstack(kb)
    cols_i = img_rows.transpose()
    if cols_k.ncols + cols_i.ncols != m.dim:
        raise ValidationError("Fitting decomposition dimensions are inconsistent")
    return cols_k, cols_i


def _trace_form_certifies_local(endos: list[ModuleMap]) -> bool:
    """Characteristic-zero locality certificate for End(M).

    Over the rationals the radical of End(M) equals the radical of the trace
    form (a, b) -> tr(ab) of the faithful action on M.  We recompute that
    radical, certify directly that it is a nilpotent ideal, and conclude
    locality when the quotient is one-dimensional.
    """
    f = endos[0].source.algebra.field
    h = len(endos)
    mats = [e.matrix for e in endos]
    d = mats[0].nrows

    def tr(mat: Matrix):
        t = f.zero()
        for i in range(mat.nrows):
            t = f.add(t, mat.data[i][i])
        return t

    gram = Matrix(f, [[tr(mats[i].mul(mats[j])) for j in range(h)] for i in range(h)], h, h)
    _, nullb = solve(gram, Matrix.zeros(f, h, 1))
    if h - len(nullb) != 1:
        return False
    rad_mats = []
    for v in nullb:
        mat = Matrix.zeros(f, d, d)
        for t in range(h):
            if v.data[t][0] != 0:
                mat = mat + mats[t].scale(v.data[t][0])
        rad_mats.append(mat)

    def flat(mat: Matrix) -> list:
        return [mat.data[i][j] for i in range(d) for j in range(d)]

    rad_flat = row_space_basis([flat(mm) for mm in rad_mats], f, d * d)
    # two-sided ideal inside End
    for n in rad_mats:
        for b in mats:
            for prod in (n.mul(b), b.mul(n)):
                if not in_row_space(flat(prod), rad_flat):
                    return False
    # nilpotency of the whole subspace: power chain must hit zero
    current = list(rad_mats)
    for _ in range(d + 1):
        if not current:
            break
        nxt_rows = []
        for x in current:
            for n in rad_mats:
                prod = x.mul(n)
                if not prod.is_zero():
                    nxt_rows.append(flat(prod))
        basis = row_space_basis(nxt_rows, f, d * d)
        current = []
        for row in basis.data:
            mat = Matrix(f, [list(row[i * d : (i + 1) * d]) for i in range(d)], d, d)
            current.append(mat)
    return not current


def decompose(m: Module) -> list[tuple[Module, int, list[tuple[ModuleMap, ModuleMap]]]]:
    """Split into indecomposable summands with explicit splitting maps.

    Returns ``[(part, multiplicity, [(injection, projection), ...])]`` where
    the maps run part -> m and m -> part for each copy, and
    sum(inj ∘ proj) = id_m (verified).  Indecomposability of each part is
    certified over a finite field whenever the full endomorphism scan fits the
    budget (every endomorphism nilpotent or invertible, i.e. End is local);
    otherwise an exhausted search raises :class:`UndecidedError` rather than
    returning an unverified split.
    """
    alg = m.algebra
    f = alg.field
    if m.dim == 0:
        return []
    leaves: list[tuple[Matrix, Module]] = []

    def combination(coeff, endos):
        emat = Matrix.zeros(f, endos[0].source.dim, endos[0].source.dim)
        for c, e in zip(coeff, endos):
            if c != 0:
                emat = emat + e.matrix.scale(f.coerce(c))
        return emat

    def work(cols: Matrix, sub: Module):
        endos = hom_space(sub, sub)
        h = len(endos)
        if h == 1:
            leaves.append((cols, sub))
            return
        # cheap pass: coprime-factor splits from structured candidates
        for coeff in _structured_candidates(f, h):
            split = _split_from_endomorphism(sub, combination(coeff, endos))
            if split is not None:
                cols_g, cols_h = split
                sub_g, _ = submodule(sub, cols_g)
                sub_h, _ = submodule(sub, cols_h)
                work(cols.mul(cols_g), sub_g)
                work(cols.mul(cols_h), sub_h)
                return
        # certification pass: End is local iff every element is nilpotent or
        # invertible; a violator yields a nontrivial Fitting decomposition
        if f.kind == "prime" and f.p**h <= DECOMPOSE_BUDGET:
            for coeff in itertools.product(range(f.p), repeat=h):
                emat = combination(coeff, endos)
                if invert(emat) is not None:
                    continue
                split = _fitting_split(sub, emat)
                if split is None:
                    continue  # nilpotent
                cols_g, cols_h = split
                sub_g, _ = submodule(sub, cols_g)
                sub_h, _ = submodule(sub, cols_h)
                work(cols.mul(cols_g), sub_g)
                work(cols.mul(cols_h), sub_h)
                return
            leaves.append((cols, sub))
            return
        if f.kind == "rational" and _trace_form_certifies_local(endos):
            leaves.append((cols, sub))
            return
        raise UndecidedError(
            f"decomposition budget exhausted on a dim-{sub.dim} module with End of dim {h}"
        )

    work(Matrix.identity(f, m.dim), m)
    leaves.sort(key=lambda t: (t[1].dim, t[1].encode()))
    # group by isomorphism
    groups: list[dict] = []
    for cols, sub in leaves:
        placed = False
        for g in groups:
            witness = is_isomorphic(g["rep"], sub)
            if witness is not None:
                g["copies"].append((cols, sub, witness))
                placed = True
                break
        if not placed:
            groups.append({"rep": sub, "copies": [(cols, sub, None)]})
    # assemble splitting maps: S = [cols_1 | ... | cols_k] is invertible
    all_cols = Matrix.hstack([cols for g in groups for cols, _, _ in g["copies"]])
    S_inv = invert(all_cols)
    if S_inv is None:
        raise ValidationError("decomposition columns failed to assemble an isomorphism")
    out = []
    offset = 0
    flat = [(gi, cols, sub, wit) for gi, g in enumerate(groups) for cols, sub, wit in g["copies"]]
    per_group: dict[int, list[tuple[ModuleMap, ModuleMap]]] = {}
    for gi, cols, sub, wit in flat:
        g = groups[gi]
        rows = [S_inv.data[offset + i] for i in range(sub.dim)]
        proj_to_copy = Matrix(f, rows, sub.dim, m.dim)
        if wit is None:
            inj = ModuleMap(g["rep"], m, cols)
            proj = ModuleMap(m, g["rep"], proj_to_copy)
        else:
            winv = invert(wit.matrix)
            inj = ModuleMap(g["rep"], m, cols.mul(wit.matrix))
            proj = ModuleMap(m, g["rep"], winv.mul(proj_to_copy))
        per_group.setdefault(gi, []).append((inj, proj))
        offset += sub.dim
    total = Matrix.zeros(f, m.dim, m.dim)
    for gi, pairs in per_group.items():
        for inj, proj in pairs:
            total = total + inj.matrix.mul(proj.matrix)
    if total != Matrix.identity(f, m.dim):
        raise ValidationError("splitting maps do not sum to the identity")
    for gi, g in enumerate(groups):
        out.append((g["rep"], len(g["copies"]), per_group[gi]))
    return out


# ---------------------------------------------------------------------------
# Isomorphism testing
# ---------------------------------------------------------------------------


def is_isomorphic(m: Module, n: Module) -> ModuleMap | None:
    """Invertible element search in Hom(m, n); None when not isomorphic.

    Raises :class:`UndecidedError` only when the search space exceeds the
    budget and no decision was reached.
    """
    if m.algebra is not n.algebra and m.algebra.content_hash() != n.algebra.content_hash():
        raise ValidationError("isomorphism test needs modules over the same algebra")
    if m.dim != n.dim:
        return None
    if m.dim == 0:
        return ModuleMap(m, n, Matrix.zeros(m.algebra.field, 0, 0), check=False)
    if m.dimension_vector() != n.dimension_vector():
        return None
    basis = hom_space(m, n)
    if not basis:
        return None
    f = m.algebra.field
    h = len(basis)
    if f.kind == "prime":
        if f.p**h <= ISO_BUDGET:
            for coeff in itertools.product(range(f.p), repeat=h):
                mat = Matrix.zeros(f, n.dim, m.dim)
                for c, b in zip(coeff, basis):
                    if c != 0:
                        mat = mat + b.matrix.scale(f.coerce(c))
                if invert(mat) is not None:
                    return ModuleMap(m, n, mat, check=False)
            return None
        for coeff in _structured_candidates(f, h):
            mat = Matrix.zeros(f, n.dim, m.dim)
            for c, b in zip(coeff, basis):
                if c != 0:
                    mat = mat + b.matrix.scale(f.coerce(c))
            if invert(mat) is not None:
                return ModuleMap(m, n, mat, check=False)
        raise UndecidedError(f"isomorphism search budget exceeded (Hom dim {h} over F_{f.p})")
    # rationals: determinant of sum x_t f_t is a polynomial with per-variable
    # degree <= dim; evaluating on the grid {0..dim}^h decides identically-zero
    d = m.dim
    if (d + 1) ** h <= ISO_BUDGET:
        for coeff in itertools.product(range(d + 1), repeat=h):
            mat = Matrix.zeros(f, n.dim, m.dim)
            for c, b in zip(coeff, basis):
                if c != 0:
                    mat = mat + b.matrix.scale(f.coerce(c))
            if invert(mat) is not None:
                return ModuleMap(m, n, mat, check=False)
        return None
    import random as _random

    rng = _random.Random(20260814)
    for _ in range(512):
        mat = Matrix.zeros(f, n.dim, m.dim)
        for b in basis:
            mat = mat + b.matrix.scale(f.coerce(rng.randrange(-d - 1, d + 2)))
        if invert(mat) is not None:
            return ModuleMap(m, n, mat, check=False)
    raise UndecidedError(f"isomorphism search budget exceeded (Hom dim {h} over Q)")


# ---------------------------------------------------------------------------
# Enumeration of indecomposables
# ---------------------------------------------------------------------------

_INDEC_CACHE: dict[tuple[str, int], list[Module]] = {}


def _compositions(total: int, parts: int):
    """All tuples of non-negative ints of length `parts` summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _support_connected(total: int, gen_blocks, zero) -> bool:
    """Whether the union of the generator supports links every basis index.
    A disconnected support graph splits the candidate into a direct sum along
    coordinate components, so only connected candidates can assemble into
    indecomposable modules of dimension > 1."""
    if total <= 1:
        return True
    parent = list(range(total))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for block in gen_blocks:
        for i, row in enumerate(block.data):
            for j, entry in enumerate(row):
                if entry != zero:
                    ra, rb = find(i), find(j)
                    if ra != rb:
                        parent[ra] = rb
    root = find(0)
    return all(find(i) == root for i in range(1, total))


def _partitions(n: int):
    """Partitions of ``n`` as non-increasing tuples, largest part first."""

    def rec(remaining: int, cap: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    if n == 0:
        yield ()
    else:
        yield from rec(n, n)


def _jordan_nilpotent(f, size: int, partition) -> Matrix:
    """Nilpotent matrix in Jordan form with the given block sizes."""
    mat = Matrix.zeros(f, size, size)
    pos = 0
    for part in partition:
        for i in range(part - 1):
            mat.data[pos + i][pos + i + 1] = f.one()
        pos += part
    return mat


def _rank_normal(f, rows: int, cols: int, rank: int) -> Matrix:
    mat = Matrix.zeros(f, rows, cols)
    for i in range(rank):
        mat.data[i][i] = f.one()
    return mat


def _canonical_slot(rad_seeds, slot_shapes, f):
    """Pick one generator slot whose block may be fixed in canonical form.

    Any module is isomorphic to one where a chosen loop block is in nilpotent
    Jordan form (radical generators act nilpotently) or a chosen cross-edge
    block is in rank normal form; the induced base change on the other blocks
    is absorbed by their full enumeration.  Returns ``(index, forms)`` or
    ``(None, None)`` when there is nothing to canonicalise."""
    cells = [r * c for r, c in slot_shapes]
    if not rad_seeds or max(cells, default=0) == 0:
        return None, None
    idx = max(range(len(rad_seeds)), key=lambda t: cells[t])
    _name, _vec, (u, w) = rad_seeds[idx]
    rows, cols = slot_shapes[idx]
    if u == w:
        forms = [_jordan_nilpotent(f, rows, part) for part in _partitions(rows)]
    else:
        forms = [_rank_normal(f, rows, cols, k) for k in range(min(rows, cols) + 1)]
    return idx, forms


def enumerate_indecomposables(alg: Algebra, dim_bound: int = 3) -> list[Module]:
    """All indecomposable modules of total dimension <= dim_bound, up to
    isomorphism, in deterministic order; cached per (algebra, bound)."""
    if alg.field.kind != "prime":
        raise DomainError("enumeration requires finite field")
    key = (alg.content_hash(), dim_bound)
    if key in _INDEC_CACHE:
        return list(_INDEC_CACHE[key])
    cached = _load_disk_cache(alg, dim_bound)
    if cached is not None:
        _INDEC_CACHE[key] = cached
        return list(cached)
    f = alg.field
    gen = alg.generating_set()
    idem_labels = [lbl for lbl, _ in alg.idempotents]
    rad_seeds = gen.radical_seeds()
    found: list[Module] = []
    total_fillings = 0
    for total in range(1, dim_bound + 1):
        for dims in _compositions(total, len(idem_labels)):
            dim_of = dict(zip(idem_labels, dims))
            blocks = {}
            start = 0
            for lbl in idem_labels:
                blocks[lbl] = (start, start + dim_of[lbl])
                start += dim_of[lbl]
            slot_shapes = [(dim_of[u], dim_of[w]) for _name, _vec, (u, w) in rad_seeds]
            canon_idx, canon_forms = _canonical_slot(rad_seeds, slot_shapes, f)
            free_cells = sum(
                r * c for t, (r, c) in enumerate(slot_shapes) if t != canon_idx
            )
            count = (len(canon_forms) if canon_forms else 1) * f.p**free_cells
            total_fillings += count
            if total_fillings > ENUMERATION_BUDGET:
                raise DomainError(
                    f"enumeration budget exceeded at total dimension {total} "
                    f"(found {len(found)} indecomposables so far)"
                )
            for canon_block in canon_forms if canon_forms else [None]:
                for filling in itertools.product(range(f.p), repeat=free_cells):
                    pos = 0
                    ok_blocks = {}
                    for t, ((name, _vec, (u, w)), (r, c)) in enumerate(
                        zip(rad_seeds, slot_shapes)
                    ):
                        block = Matrix.zeros(f, total, total)
                        r0 = blocks[u][0]
                        c0 = blocks[w][0]
                        if t == canon_idx:
                            for ii in range(r):
                                for jj in range(c):
                                    block.data[r0 + ii][c0 + jj] = canon_block.data[ii][jj]
                        else:
                            for ii in range(r):
                                for jj in range(c):
                                    block.data[r0 + ii][c0 + jj] = f.coerce(filling[pos])
                                    pos += 1
                        ok_blocks[name] = block
                    if not _support_connected(total, ok_blocks.values(), f.zero()):
                        continue
                    mod = _module_from_generator_blocks(alg, gen, blocks, total, ok_blocks)
                    if mod is None:
                        continue
                    parts = decompose(mod)
                    if len(parts) != 1 or parts[0][1] != 1:
                        continue
                    if any(
                        is_isomorphic(kept, mod) is not None
                        for kept in found
                        if kept.dim == total
                    ):
                        continue
                    found.append(mod)
    found.sort(key=lambda mm: (mm.dim, mm.encode()))
    _INDEC_CACHE[key] = found
    _store_disk_cache(alg, dim_bound, found)
    return list(found)


def _module_from_generator_blocks(
    alg: Algebra, gen, blocks: dict[str, tuple[int, int]], total: int, gen_mats: dict[str, Matrix]
) -> Module | None:
    """Assemble full action matrices from generator images; None if invalid."""
    f = alg.field
    seed_mats: list[Matrix] = []
    for _name, _vec, (u, _w) in gen.seeds[: gen.n_idempotents]:
        mat = Matrix.zeros(f, total, total)
        s0, s1 = blocks[u]
        for i in range(s0, s1):
            mat.data[i][i] = f.one()
        seed_mats.append(mat)
    for name, _vec, _blk in gen.radical_seeds():
        seed_mats.append(gen_mats[name])
    word_mats = []
    for word in gen.words:
        mat = seed_mats[word[0]]
        for idx in word[1:]:
            mat = mat.mul(seed_mats[idx])
        word_mats.append(mat)
    action = {}
    for i, lbl in enumerate(alg.labels):
        mat = Matrix.zeros(f, total, total)
        for t in range(len(word_mats)):
            c = gen.expansion.data[t][i]
            if c != 0:
                mat = mat + word_mats[t].scale(c)
        action[lbl] = mat
    try:
        return Module(alg, total, action)
    except ValidationError:
        return None


def _cache_dir() -> str | None:
    return os.environ.get("SILTING_FORGE_CACHE")


def _load_disk_cache(alg: Algebra, bound: int) -> list[Module] | None:
    root = _cache_dir()
    if not root:
        return None
    path = os.path.join(root, f"indec_{alg.content_hash()}_{bound}.json")
    if not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            payload = json.load(fh)
        out = []
        for entry in payload:
            action = {
                lbl: Matrix.from_lists(alg.field, rows, entry["dim"], entry["dim"]) if entry["dim"] else Matrix.zeros(alg.field, 0, 0)
                for lbl, rows in entry["action"].items()
            }
            out.append(Module(alg, entry["dim"], action))
        return out
    except (OSError, ValueError, KeyError, ExactError):
        return None


def _store_disk_cache(alg: Algebra, bound: int, mods: list[Module]):
    root = _cache_dir()
    if not root:
        return
    os.makedirs(root, exist_ok=True)
    path = os.path.join(root, f"indec_{alg.content_hash()}_{bound}.json")
    payload = [
        {"dim": m.dim, "action": {lbl: m.action[lbl].to_lists() for lbl in alg.labels}}
        for m in mods
    ]
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True)
