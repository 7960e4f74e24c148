"""Certified two-term presentation checks, enumeration, and tensor transport.

A two-term map sigma between projective modules determines a membership
class: the modules receiving a surjective Hom-restriction along sigma.  A
module together with a presentation is *silting* when that class coincides
with the class of quotients of finite sums of the module, *partial* when it
only sits inside its own class.  This module provides:

* :func:`d_sigma_contains` / :func:`gen_contains` -- the two membership tests,
* :func:`silting_check` -- a certificate comparing the classes for a module
  with a chosen (or automatically minimal) presentation,
* :func:`enumerate_silting` -- exhaustive enumeration over a finite field,
* :func:`tensor_silting` -- the induced presentation of an outer tensor
  product over a tensor-product algebra, with a comparison report.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exactlinalg import Matrix, in_row_space, nullspace, rank, row_space_basis
from .algebra import Algebra, DomainError, ValidationError, derive_algebra
from .modules import (
    Module,
    ModuleMap,
    Presentation,
    UndecidedError,
    ar_translate,
    decompose,
    direct_sum,
    enumerate_indecomposables,
    hom_dim,
    hom_space,
    indecomposable_projectives,
    is_isomorphic,
    is_projective,
    map_spaces,
    minimal_projective_presentation,
    quotient_module,
    right_add_approximation,
    tensor_over_field,
)

#: Static justification recorded in every certificate: the membership class of
#: a two-term map between finitely generated projectives is closed under
#: arbitrary coproducts because maps out of a finitely generated module factor
#: through a finite subsum.  This is a structural fact, not re-tested per run.
COPRODUCT_NOTE = (
    "coproduct closure: holds for every two-term class because both "
    "presentation terms are finitely generated, so Hom out of them commutes "
    "with direct sums (static fact, not re-tested)"
)

VERDICTS = ("silting", "partial_silting_only", "not_silting", "undecided")


# ---------------------------------------------------------------------------
# Membership tests.
# ---------------------------------------------------------------------------


def _same_algebra(a: Algebra, b: Algebra) -> bool:
    return a is b or a.content_hash() == b.content_hash()


def _flat(mat: Matrix) -> list:
    return [x for row in mat.data for x in row]


def _hom_restriction_surjective(smap: ModuleMap, m: Module) -> bool:
    """Whether composing with ``smap`` maps Hom(target, m) onto Hom(source, m)."""
    hom_from_source = hom_space(smap.source, m)
    if not hom_from_source:
        return True
    hom_from_target = hom_space(smap.target, m)
    f = m.algebra.field
    width = m.dim * smap.source.dim
    rows = [_flat(h.matrix.mul(smap.matrix)) for h in hom_from_target]
    span = row_space_basis(rows, f, width)
    return all(in_row_space(_flat(g.matrix), span) for g in hom_from_source)


def _presentation_map(sigma) -> ModuleMap:
    if isinstance(sigma, Presentation):
        if sigma.kind != "projective":
            raise ValidationError(
                f"membership test needs a projective-kind presentation, got {sigma.kind!r}"
            )
        return sigma.map
    if isinstance(sigma, ModuleMap):
        if not (is_projective(sigma.source) and is_projective(sigma.target)):
            raise ValidationError("membership test needs a map between projective modules")
        return sigma
    raise ValidationError("expected a Presentation or a ModuleMap between projectives")


def d_sigma_contains(sigma, m: Module) -> bool:
    """Membership of ``m`` in the class of the two-term map ``sigma``.

    ``sigma`` may be a projective-kind :class:`Presentation` or a
    :class:`ModuleMap` between projective modules.
    """
    smap = _presentation_map(sigma)
    if not _same_algebra(smap.source.algebra, m.algebra):
        raise ValidationError("membership test needs a module over the same algebra")
    return _hom_restriction_surjective(smap, m)


def gen_contains(t: Module, m: Module) -> bool:
    """Whether ``m`` is a quotient of a finite direct sum of copies of ``t``."""
    if not _same_algebra(t.algebra, m.algebra):
        raise ValidationError("generation test needs modules over the same algebra")
    return right_add_approximation(t, m).is_surjective()


# ---------------------------------------------------------------------------
# Presentation constructors.
# ---------------------------------------------------------------------------


def presentation_from_map(smap: ModuleMap) -> Presentation:
    """Wrap a map between projectives as a presentation of its cokernel."""
    if not (is_projective(smap.source) and is_projective(smap.target)):
        raise ValidationError("presentation terms must be projective")
    coker, cmap = map_spaces(smap)["cokernel"]
    return Presentation(
        kind="projective",
        map=smap,
        cokernel=coker,
        coker_map=cmap,
        certificates={"cokernel_computed": True},
    )


def _block_diag(f, blocks: list[Matrix], nrows: list[int], ncols: list[int]) -> Matrix:
    total_r, total_c = sum(nrows), sum(ncols)
    data = [[f.zero()] * total_c for _ in range(total_r)]
    r0 = c0 = 0
    for b, nr, nc in zip(blocks, nrows, ncols):
        for i in range(nr):
            for j in range(nc):
                data[r0 + i][c0 + j] = b.data[i][j]
        r0 += nr
        c0 += nc
    return Matrix(f, data, total_r, total_c)


def direct_sum_presentation(parts: list[Presentation], algebra: Algebra | None = None) -> Presentation:
    """Block-diagonal direct sum of presentations of the same kind."""
    if not parts:
        raise ValidationError("empty presentation sum needs at least one part")
    kind = parts[0].kind
    if any(p.kind != kind for p in parts):
        raise ValidationError("cannot sum presentations of different kinds")
    alg = parts[0].map.source.algebra
    f = alg.field
    src, _, _ = direct_sum([p.map.source for p in parts], algebra=algebra or alg)
    tgt, _, _ = direct_sum([p.map.target for p in parts], algebra=algebra or alg)
    cok, _, _ = direct_sum([p.cokernel for p in parts], algebra=algebra or alg)
    mat = _block_diag(
        f,
        [p.map.matrix for p in parts],
        [p.map.target.dim for p in parts],
        [p.map.source.dim for p in parts],
    )
    cmat = _block_diag(
        f,
        [p.coker_map.matrix for p in parts],
        [p.cokernel.dim for p in parts],
        [p.map.target.dim for p in parts],
    )
    return Presentation(
        kind=kind,
        map=ModuleMap(src, tgt, mat),
        cokernel=cok,
        coker_map=ModuleMap(tgt, cok, cmat),
        certificates={"summands": len(parts)},
    )


def presentation_with_complement(t: Module, complement: list[Module]) -> Presentation:
    """Minimal presentation of ``t`` summed with ``Q -> 0`` for each complement."""
    base = minimal_projective_presentation(t)
    if not complement:
        return base
    alg = t.algebra
    f = alg.field
    for q in complement:
        if not is_projective(q):
            raise ValidationError("complement summands must be projective")
    qhat, _, _ = direct_sum(list(complement), algebra=alg)
    p1, _, _ = direct_sum([base.map.source, qhat], algebra=alg)
    mat = Matrix.hstack([base.map.matrix, Matrix.zeros(f, base.map.target.dim, qhat.dim)])
    certs = dict(base.certificates)
    certs["complement_summands"] = len(complement)
    return Presentation(
        kind="projective",
        map=ModuleMap(p1, base.map.target, mat),
        cokernel=base.cokernel,
        coker_map=base.coker_map,
        certificates=certs,
    )


def kernel_top_multiplicities(smap: ModuleMap) -> dict[str, int]:
    """Per-vertex multiplicity of the kernel of ``smap`` modulo the radical.

    Reading the kernel through the top of the source identifies which vertex
    projectives occur as direct summands of the source killed by the map.
    """
    p1 = smap.source
    alg = p1.algebra
    labels = [lbl for lbl, _ in alg.idempotents]
    if p1.dim == 0:
        return {lbl: 0 for lbl in labels}
    nullb = nullspace(smap.matrix)
    if not nullb:
        return {lbl: 0 for lbl in labels}
    kcols = Matrix.hstack(nullb)
    top, proj = quotient_module(p1, p1.radical_columns())
    img = proj.matrix.mul(kcols)
    return {lbl: rank(top.act(evec).mul(img)) for lbl, evec in alg.idempotents}


# ---------------------------------------------------------------------------
# The certificate.
# ---------------------------------------------------------------------------


@dataclass
class SiltingCertificate:
    """Outcome of comparing a module's generation class with its presentation class.

    ``verdict`` is one of :data:`VERDICTS`.  ``support`` holds the rigidity
    certificate data (kernel complement multiplicities and the class count);
    ``probes`` records the per-probe membership sweep; ``mismatch`` is the
    first witness separating the two classes, if any.
    """

    module: Module
    presentation: Presentation
    verdict: str
    tau_rigid: bool | None
    support: dict
    probes: list
    mismatch: dict | None
    notes: tuple

    def __bool__(self) -> bool:
        return self.verdict == "silting"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "module": {
                "dim": self.module.dim,
                "dimension_vector": self.module.dimension_vector(),
            },
            "presentation": {
                "kind": self.presentation.kind,
                "p1_dim": self.presentation.map.source.dim,
                "p0_dim": self.presentation.map.target.dim,
            },
            "tau_rigid": self.tau_rigid,
            "support": self.support,
            "probes": self.probes,
            "mismatch": self.mismatch,
            "notes": list(self.notes),
        }


def _resolve_presentation(t: Module, sigma, notes: list) -> Presentation:
    if sigma is None or (isinstance(sigma, str) and sigma.upper() == "AUTO"):
        notes.append("presentation: automatic minimal")
        return minimal_projective_presentation(t)
    pres = sigma if isinstance(sigma, Presentation) else presentation_from_map(_presentation_map(sigma))
    if pres.kind != "projective":
        raise ValidationError(
            f"two-term check needs a projective-kind presentation, got {pres.kind!r}"
        )
    if pres.cokernel is not t and is_isomorphic(pres.cokernel, t) is None:
        raise ValidationError("supplied presentation does not present the given module")
    notes.append("presentation: supplied")
    return pres


def _resolve_probes(alg: Algebra, probe, dim_bound: int, notes: list) -> list:
    if probe is None:
        if alg.field.kind != "prime":
            notes.append(
                "probe sweep unavailable over the rationals; verdict rests on the rigidity certificate alone"
            )
            return []
        notes.append(f"probe sweep: all indecomposables of dimension <= {dim_bound}")
        return enumerate_indecomposables(alg, dim_bound)
    if isinstance(probe, int):
        if alg.field.kind != "prime":
            raise DomainError("probe enumeration requires a finite field")
        notes.append(f"probe sweep: all indecomposables of dimension <= {probe}")
        return enumerate_indecomposables(alg, probe)
    notes.append("probe sweep: supplied probe list")
    return list(probe)


def silting_check(t: Module, sigma="AUTO", probe=None, *, dim_bound: int = 3) -> SiltingCertificate:
    """Compare the generation class of ``t`` with the class of its presentation.

    Runs, in order: the self-membership gate (the module must lie in its own
    presentation class), the probe sweep comparing both memberships on every
    probe, and the rigidity certificate (Hom into the translate vanishes, the
    kernel complement misses the module, and the class count fills the vertex
    count).  A probe mismatch against an otherwise complete certificate is a
    contradiction and yields ``undecided``; a mismatch alone is decisive.
    """
    alg = t.algebra
    notes: list = [COPRODUCT_NOTE]
    pres = _resolve_presentation(t, sigma, notes)
    probe_list = _resolve_probes(alg, probe, dim_bound, notes)

    in_d = d_sigma_contains(pres, t)
    probes: list = []
    mismatch: dict | None = None
    if in_d:
        for idx, mprobe in enumerate(probe_list):
            dm = d_sigma_contains(pres, mprobe)
            gm = gen_contains(t, mprobe)
            rec = {
                "index": idx,
                "dim": mprobe.dim,
                "dimension_vector": mprobe.dimension_vector(),
                "in_d_sigma": dm,
                "in_gen": gm,
                "agree": dm == gm,
            }
            probes.append(rec)
            if dm != gm and mismatch is None:
                mismatch = {k: rec[k] for k in ("index", "dim", "dimension_vector", "in_d_sigma", "in_gen")}
    else:
        notes.append("probe sweep skipped: module outside its own presentation class")
        mismatch = {"witness": "presented module", "in_d_sigma": False, "in_gen": True}

    # Rigidity certificate.
    taut = ar_translate(t)
    hom_to_translate = hom_dim(t, taut)
    tau_rigid = hom_to_translate == 0
    mults = kernel_top_multiplicities(pres.map)
    projs = indecomposable_projectives(alg)
    comp_parts = [(p, lbl) for p, lbl in projs if mults[lbl] > 0]
    hom_vanish = all(hom_dim(p, t) == 0 for p, _ in comp_parts)
    tau_undecided = False
    classes_t: int | None
    try:
        classes_t = 0 if t.dim == 0 else len(decompose(t))
    except UndecidedError:
        classes_t = None
        tau_undecided = True
        notes.append("decomposition undecided; class count unavailable")
    classes_q = len(comp_parts)
    nverts = len(alg.idempotents)
    count_ok = classes_t is not None and classes_t + classes_q == nverts
    tau_certified = tau_rigid and hom_vanish and count_ok
    support = {
        "complement_multiplicities": mults,
        "complement_classes": classes_q,
        "module_classes": classes_t,
        "vertex_count": nverts,
        "count_identity": bool(count_ok),
        "hom_complement_vanishes": hom_vanish,
        "hom_to_translate_dim": hom_to_translate,
    }

    if not in_d:
        verdict = "not_silting"
    elif mismatch is not None:
        if tau_certified:
            verdict = "undecided"
            notes.append("probe mismatch conflicts with a complete rigidity certificate")
        else:
            verdict = "not_silting"
    elif tau_undecided:
        verdict = "undecided"
    elif tau_certified:
        verdict = "silting"
    elif tau_rigid:
        verdict = "partial_silting_only"
    else:
        # Self-membership passed yet rigidity failed: these are equivalent for
        # a minimal-or-padded two-term map, so the evidence is inconsistent.
        verdict = "undecided"
        notes.append("self-membership passed but rigidity failed; evidence inconsistent")

    return SiltingCertificate(
        module=t,
        presentation=pres,
        verdict=verdict,
        tau_rigid=tau_rigid,
        support=support,
        probes=probes,
        mismatch=mismatch,
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# Enumeration.
# ---------------------------------------------------------------------------


def enumerate_silting(alg: Algebra, dim_bound: int = 3, probe=None) -> list[SiltingCertificate]:
    """All silting classes with indecomposable summands of dim <= ``dim_bound``.

    Candidates are sums of pairwise-compatible rigid indecomposables whose
    unsupported vertices supply the projective complement; each surviving
    candidate is verified by :func:`silting_check` and only ``silting``
    verdicts are returned, in deterministic order.
    """
    if alg.field.kind != "prime":
        raise DomainError("enumeration requires a finite field")
    pool = enumerate_indecomposables(alg, dim_bound)
    projs = indecomposable_projectives(alg)
    nverts = len(alg.idempotents)
    translates = [ar_translate(m) for m in pool]
    rigid = [i for i, m in enumerate(pool) if hom_dim(m, translates[i]) == 0]
    probe_list = list(probe) if probe is not None else pool
    results: list[SiltingCertificate] = []
    for r in range(0, nverts + 1):
        for combo in itertools.combinations(rigid, r):
            if any(
                hom_dim(pool[i], translates[j]) != 0
                for i in combo
                for j in combo
                if i != j
            ):
                continue
            parts = [pool[i] for i in combo]
            t, _, _ = direct_sum(parts, algebra=alg)
            supported = {lbl for lbl, d in t.dimension_vector().items() if d > 0}
            comp = [(p, lbl) for p, lbl in projs if lbl not in supported]
            if len(combo) + len(comp) != nverts:
                continue
            if any(hom_dim(p, t) > 0 for p, _ in comp):
                continue
            pres = presentation_with_complement(t, [p for p, _ in comp])
            cert = silting_check(t, pres, probe=probe_list)
            if cert.verdict == "silting":
                results.append(cert)
    return results


# ---------------------------------------------------------------------------
# Tensor transport.
# ---------------------------------------------------------------------------


def tensor_silting(
    t: Module,
    sigma,
    s: Module,
    eta,
    probe=None,
    tensor_alg: Algebra | None = None,
    dim_bound: int = 2,
):
    """Outer tensor product with its induced two-term data over A (x) B.

    Builds both candidate maps: the termwise map P1(x)Q1 -> P0(x)Q0 and the
    totalized map (P1(x)Q0) + (P0(x)Q1) -> P0(x)Q0, checks which one presents
    the tensor module, and runs :func:`silting_check` against the totalized
    presentation.  Returns ``(module, presentation, certificate, report)``.
    """
    notes_t: list = []
    notes_s: list = []
    spres = _resolve_presentation(t, sigma, notes_t)
    epres = _resolve_presentation(s, eta, notes_s)
    a, b = t.algebra, s.algebra
    if tensor_alg is None:
        tensor_alg, _ = derive_algebra(a, "tensor", b=b)
    f = tensor_alg.field
    ts = tensor_over_field(t, s, tensor_alg)

    p1q1 = tensor_over_field(spres.map.source, epres.map.source, tensor_alg)
    p0q0 = tensor_over_field(spres.map.target, epres.map.target, tensor_alg)
    termwise = ModuleMap(p1q1, p0q0, spres.map.matrix.kron(epres.map.matrix))
    termwise_coker, _ = map_spaces(termwise)["cokernel"]
    termwise_ok = termwise_coker.dim == ts.dim and is_isomorphic(termwise_coker, ts) is not None

    p1q0 = tensor_over_field(spres.map.source, epres.map.target, tensor_alg)
    p0q1 = tensor_over_field(spres.map.target, epres.map.source, tensor_alg)
    src, _, _ = direct_sum([p1q0, p0q1], algebra=tensor_alg)
    left_block = spres.map.matrix.kron(Matrix.identity(f, epres.map.target.dim))
    right_block = Matrix.identity(f, spres.map.target.dim).kron(epres.map.matrix)
    total = ModuleMap(src, p0q0, Matrix.hstack([left_block, right_block]))
    cmap = ModuleMap(p0q0, ts, spres.coker_map.matrix.kron(epres.coker_map.matrix))
    pres = Presentation(
        kind="projective",
        map=total,
        cokernel=ts,
        coker_map=cmap,
        certificates={"totalized": True},
    )

    probe_list = _resolve_probes(tensor_alg, probe, dim_bound, [])
    cert = silting_check(ts, pres, probe=probe_list)

    membership = []
    for idx, u in enumerate(probe_list):
        membership.append(
            {
                "index": idx,
                "dim": u.dim,
                "dimension_vector": u.dimension_vector(),
                "in_d_termwise": _hom_restriction_surjective(termwise, u),
                "in_d_totalized": _hom_restriction_surjective(total, u),
                "in_gen": gen_contains(ts, u),
            }
        )
    report = {
        "termwise_map_presents_tensor_module": termwise_ok,
        "degenerate_termwise_map": not termwise_ok,
        "termwise_cokernel_dim": termwise_coker.dim,
        "tensor_module_dim": ts.dim,
        "termwise_shape": [p1q1.dim, p0q0.dim],
        "totalized_shape": [src.dim, p0q0.dim],
        "probe_membership": membership,
        "verdict": cert.verdict,
    }
    return ts, pres, cert, report
