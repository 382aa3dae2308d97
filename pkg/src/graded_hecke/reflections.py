"""Geometric data attached to a finite matrix group.

For a group element s, the moved space is im(id - s) and the fixed space is
ker(id - s).  A bireflection moves exactly a plane (rank(id - s) = 2).  The
admissible bireflections are those whose full centralizer acts with
determinant one on the moved plane; that set is closed under conjugation and
generates a normal subgroup inside SL(V) containing no rank-one elements.

Each admissible bireflection carries a plane form: the skew-symmetric
bilinear form on V whose radical is the fixed space, normalized to take the
value 1 on the canonical moved-plane basis of a chosen class representative
and propagated to conjugates by pullback.  Well-definedness of the
propagation is asserted at runtime along every conjugating element.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .cyclo import CycNum
from .groups import Group, centralizer, fixed_and_moved
from .linalg import Mat, Vector


@dataclass(frozen=True)
class SkewForm:
    """Skew-symmetric bilinear form (v, w) -> v^T B w."""

    matrix: Mat

    def __post_init__(self):
        B = self.matrix
        if not (B + B.transpose()).is_zero():
            raise ValueError("form matrix is not skew-symmetric")

    def evaluate(self, v: Vector, w: Vector) -> CycNum:
        return linalg.dot(v, self.matrix.apply(w))

    def evaluate_basis(self, i: int, j: int) -> CycNum:
        return self.matrix[i, j]

    def pullback(self, g: Mat) -> "SkewForm":
        """The form (v, w) -> B(g v, g w), i.e. g^T B g."""
        return SkewForm(g.transpose() @ self.matrix @ g)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def scale(self, c) -> "SkewForm":
        return SkewForm(self.matrix.scale(c))

    def add(self, other: "SkewForm") -> "SkewForm":
        return SkewForm(self.matrix + other.matrix)


@dataclass(frozen=True)
class ReflectionData:
    group: Group
    bireflections: tuple[int, ...]
    admissible: tuple[int, ...]           # closed under conjugation
    subgroup: tuple[int, ...]             # normal subgroup generated by admissible
    classes: tuple[tuple[int, ...], ...]  # conjugacy classes inside admissible
    plane_forms: dict                     # element index -> SkewForm
    invariant_forms: tuple[SkewForm, ...]

    @property
    def n_forms(self) -> int:
        return len(self.invariant_forms)

    @property
    def class_reps(self) -> tuple[int, ...]:
        return tuple(cls[0] for cls in self.classes)

    @property
    def generated_by_admissible(self) -> bool:
        return len(self.subgroup) == self.group.order

    def combined_form(self, weights) -> SkewForm:
        """Sum of weights[i] * invariant_forms[i] (zero form when empty)."""
        total = Mat.zeros(self.group.dim, self.group.dim, self.group.conductor)
        for w, form in zip(weights, self.invariant_forms):
            total = total + form.matrix.scale(w)
        return SkewForm(total)


def bireflections(G: Group) -> tuple[int, ...]:
    """Indices of all s != id with rank(id - s) = 2."""
    out = []
    eye = Mat.identity(G.dim, G.conductor)
    for i in range(1, G.order):
        if linalg.rank(eye - G.elements[i]) == 2:
            out.append(i)
    return tuple(out)


def reflections(G: Group) -> tuple[int, ...]:
    """Indices of rank-one elements (used only for sanity checks)."""
    eye = Mat.identity(G.dim, G.conductor)
    return tuple(i for i in range(1, G.order)
                 if linalg.rank(eye - G.elements[i]) == 1)


def restricted_to_span(g: Mat, basis: list[Vector]) -> Mat:
    """Matrix of g on span(basis); raises if g does not preserve the span."""
    U = Mat.from_columns(list(basis))
    gU = g @ U
    try:
        return linalg.solve_matrix(U, gU)
    except ValueError as exc:
        raise AssertionError("element does not preserve the subspace") from exc


def admissible_bireflections(G: Group, birefs: tuple[int, ...]) -> tuple[int, ...]:
    """Bireflections whose centralizer always has determinant 1 on the moved plane."""
    keep = []
    for s in birefs:
        _, moved = fixed_and_moved(G, s)
        ok = True
        for g in centralizer(G, s):
            R = restricted_to_span(G.elements[g], moved)
            if linalg.det(R) != CycNum.one():
                ok = False
                break
        if ok:
            keep.append(s)
    result = tuple(keep)
    members = set(result)
    for s in result:
        for g in range(G.order):
            assert G.conjugate(s, g) in members, \
                "admissible set not closed under conjugation"
    return result


def generated_subgroup(G: Group, seeds: tuple[int, ...]) -> tuple[int, ...]:
    """Indices of the subgroup generated by `seeds` (normal when seeds are)."""
    members = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for s in seeds:
            y = G.mult(x, s)
            if y not in members:
                members.add(y)
                frontier.append(y)
    return tuple(sorted(members))


def _plane_form_for(G: Group, s: int) -> SkewForm:
    # Build the form with radical ker(id - s), normalized to 1 on the
    # canonical moved-plane basis: project onto the moved coordinates and
    # take the standard symplectic form there.
    fixed, moved = fixed_and_moved(G, s)
    assert len(moved) == 2
    T = Mat.from_columns(fixed + moved)
    Tinv = linalg.inverse(T)
    p1 = Tinv.row(len(fixed))
    p2 = Tinv.row(len(fixed) + 1)
    n = G.dim
    B = Mat(tuple(
        tuple(p1[a] * p2[b] - p2[a] * p1[b] for b in range(n)) for a in range(n)
    ))
    return SkewForm(B)


def plane_forms(G: Group, admissible: tuple[int, ...]) -> dict:
    """Plane form for every admissible element, one class at a time.

    The class representative gets the normalized form; conjugates get the
    pulled-back form.  Agreement along every conjugating element is asserted,
    as is the radical property on both sides of the moved/fixed split.
    """
    forms: dict[int, SkewForm] = {}
    admissible_set = set(admissible)
    for cls in G.classes:
        members = [i for i in cls if i in admissible_set]
        if not members:
            continue
        rep = members[0]
        base = _plane_form_for(G, rep)
        for u in members:
            candidate = None
            for g in range(G.order):
                if G.conjugate(rep, g) != u:
                    continue
                pulled = base.pullback(G.elements[g])
                if candidate is None:
                    candidate = pulled
                else:
                    assert pulled.matrix == candidate.matrix, \
                        "plane form propagation is not well-defined"
            forms[u] = candidate
    for u, form in forms.items():
        fixed, moved = fixed_and_moved(G, u)
        for v in fixed:
            assert all(c.is_zero() for c in form.matrix.apply(v)), \
                "fixed space not inside the form radical"
        assert form.evaluate(moved[0], moved[1]), "form vanishes on the moved plane"
    return forms


def invariant_skew_forms(G: Group) -> tuple[SkewForm, ...]:
    """Canonical basis of the G-invariant skew-symmetric bilinear forms.

    Solves g^T B g = B over the strictly-upper-triangular coordinates, using
    the generators only; invariance under the whole group is asserted after
    the fact.
    """
    n = G.dim
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    pos = {p: k for k, p in enumerate(pairs)}
    if not pairs:
        return ()
    rows = []
    zero = CycNum.zero(G.conductor)
    for gi in set(G.generators):
        g = G.elements[gi]
        for (i, j) in pairs:
            row = [zero] * len(pairs)
            for (a, b) in pairs:
                row[pos[(a, b)]] = g[a, i] * g[b, j] - g[b, i] * g[a, j]
            row[pos[(i, j)]] = row[pos[(i, j)]] - CycNum.one(G.conductor)
            rows.append(row)
    if not rows:
        kernel = [tuple(CycNum.one() if k == t else zero for k in range(len(pairs)))
                  for t in range(len(pairs))]
    else:
        kernel = linalg.kernel_basis(Mat(tuple(tuple(r) for r in rows)))
    forms = []
    for vec in kernel:
        B = [[zero] * n for _ in range(n)]
        for (a, b), k in pos.items():
            B[a][b] = vec[k]
            B[b][a] = -vec[k]
        forms.append(SkewForm(Mat(tuple(tuple(r) for r in B))))
    for form in forms:
        for gi in range(G.order):
            assert form.pullback(G.elements[gi]).matrix == form.matrix, \
                "form is not invariant under the full group"
    return tuple(forms)


def compute_reflection_data(G: Group) -> ReflectionData:
    """All reflection-theoretic ingredients of the deformation classification."""
    birefs = bireflections(G)
    admissible = admissible_bireflections(G, birefs)
    subgroup = generated_subgroup(G, admissible)

    # The generated subgroup sits inside SL(V) and has no rank-one elements.
    refl = set(reflections(G))
    for x in subgroup:
        assert x not in refl, "bireflection subgroup contains a reflection"
        assert linalg.det(G.elements[x]) == CycNum.one(), \
            "bireflection subgroup leaves SL(V)"

    admissible_set = set(admissible)
    classes = tuple(
        tuple(i for i in cls if i in admissible_set)
        for cls in G.classes if any(i in admissible_set for i in cls)
    )
    for cls in classes:
        full = set(G.classes[G.class_of[cls[0]]])
        assert set(cls) == full, "admissible set splits a conjugacy class"

    return ReflectionData(
        group=G,
        bireflections=birefs,
        admissible=admissible,
        subgroup=subgroup,
        classes=classes,
        plane_forms=plane_forms(G, admissible),
        invariant_forms=invariant_skew_forms(G),
    )
