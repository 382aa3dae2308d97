"""The space of commutator maps that deform a skew group algebra.

A deformation replaces the commutation rule v w = w v of the polynomial part
with [v_i, v_j] = kappa(v_i, v_j), where each value is an element of the
group algebra.  The valid maps are computed two independent ways:

* from parameters: a weight per invariant 2-form (acting through the
  identity) plus one weight per conjugacy class of admissible bireflections
  (acting through the class elements scaled by their plane forms);

* from first principles: the exact solution space of the linear system made
  of the equivariance equations kappa(g v, g w) = g kappa(v, w) g^-1 for the
  group generators together with the mixed associativity constraints, which
  require id (x) kappa - kappa (x) id to vanish on the intersection of
  (commutators (x) V) and (V (x) commutators) inside V^(x)3, expanded with
  the straightening rule g v = g(v) g.

`classification_crosscheck` certifies that the two computations produce the
same space; it is the strongest internal correctness oracle in the package.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .cyclo import CycNum, as_cycnum
from .groups import Group
from .linalg import Mat, Vector
from .reflections import ReflectionData, SkewForm


def basis_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


class CommutatorMap:
    """Assignment (i, j) -> group-algebra element, skew in (i, j).

    The table stores, for each basis pair i < j, the coefficient vector of
    [v_i, v_j] over the group elements; other pairs follow by skew-symmetry.
    """

    __slots__ = ("dim", "group_order", "table")

    def __init__(self, dim: int, group_order: int, table: dict):
        self.dim = dim
        self.group_order = group_order
        clean = {}
        for (i, j), coeffs in table.items():
            if not i < j:
                raise ValueError("table keys must satisfy i < j")
            vec = tuple(as_cycnum(c) for c in coeffs)
            if len(vec) != group_order:
                raise ValueError("coefficient vector has wrong length")
            clean[(i, j)] = vec
        self.table = clean

    def coefficients(self, i: int, j: int) -> tuple[CycNum, ...]:
        """Group-algebra coefficients of [v_i, v_j] for arbitrary i, j."""
        zero = CycNum.zero()
        if i == j:
            return (zero,) * self.group_order
        if i < j:
            return self.table.get((i, j), (zero,) * self.group_order)
        return tuple(-c for c in self.coefficients(j, i))

    def coefficient(self, i: int, j: int, g: int) -> CycNum:
        return self.coefficients(i, j)[g]

    def evaluate(self, v: Vector, w: Vector) -> tuple[CycNum, ...]:
        """Bilinear extension to arbitrary vectors."""
        acc = [CycNum.zero()] * self.group_order
        for (i, j), coeffs in self.table.items():
            factor = v[i] * w[j] - v[j] * w[i]
            if factor:
                for g, c in enumerate(coeffs):
                    if c:
                        acc[g] = acc[g] + factor * c
        return tuple(acc)

    def identity_form(self, conductor: int = 1) -> SkewForm:
        """The skew form read off the identity coefficients."""
        n = self.dim
        zero = CycNum.zero(conductor)
        B = [[zero] * n for _ in range(n)]
        for (i, j), coeffs in self.table.items():
            B[i][j] = coeffs[0]
            B[j][i] = -coeffs[0]
        return SkewForm(Mat(tuple(tuple(r) for r in B)))

    def support(self) -> set[int]:
        out = set()
        for coeffs in self.table.values():
            out.update(g for g, c in enumerate(coeffs) if c)
        return out

    def is_zero(self) -> bool:
        return not self.support()

    def scaled(self, c) -> "CommutatorMap":
        c = as_cycnum(c)
        return CommutatorMap(self.dim, self.group_order, {
            p: tuple(c * x for x in coeffs) for p, coeffs in self.table.items()
        })

    def as_vector(self) -> Vector:
        out = []
        for p in basis_pairs(self.dim):
            out.extend(self.coefficients(*p))
        return tuple(out)

    @staticmethod
    def from_vector(dim: int, group_order: int, vec) -> "CommutatorMap":
        pairs = basis_pairs(dim)
        table = {}
        for k, p in enumerate(pairs):
            table[p] = tuple(vec[k * group_order: (k + 1) * group_order])
        return CommutatorMap(dim, group_order, table)

    @staticmethod
    def combine(maps: list["CommutatorMap"], weights) -> "CommutatorMap":
        if not maps:
            raise ValueError("need at least one map to combine")
        dim, order = maps[0].dim, maps[0].group_order
        acc = {p: [CycNum.zero()] * order for p in basis_pairs(dim)}
        for m, w in zip(maps, weights):
            w = as_cycnum(w)
            for p, coeffs in m.table.items():
                for g, c in enumerate(coeffs):
                    if c:
                        acc[p][g] = acc[p][g] + w * c
        return CommutatorMap(dim, order, {p: tuple(v) for p, v in acc.items()})

    def __eq__(self, other):
        if not isinstance(other, CommutatorMap):
            return NotImplemented
        return (self.dim == other.dim and self.group_order == other.group_order
                and self.as_vector() == other.as_vector())

    def __repr__(self):
        nz = sum(1 for c in self.as_vector() if c)
        return f"CommutatorMap(dim={self.dim}, |G|={self.group_order}, nonzeros={nz})"


@dataclass(frozen=True)
class DeformationParams:
    """One weight per invariant 2-form, one per admissible class (by rep)."""

    form_weights: tuple[CycNum, ...]
    class_weights: tuple[tuple[int, CycNum], ...]

    @staticmethod
    def make(form_weights, class_weights: dict) -> "DeformationParams":
        return DeformationParams(
            tuple(as_cycnum(w) for w in form_weights),
            tuple(sorted((int(r), as_cycnum(c)) for r, c in class_weights.items())),
        )

    @staticmethod
    def zero(refl: ReflectionData) -> "DeformationParams":
        return DeformationParams.make(
            [0] * refl.n_forms, {r: 0 for r in refl.class_reps})

    def class_weight(self, rep: int) -> CycNum:
        for r, c in self.class_weights:
            if r == rep:
                return c
        return CycNum.zero()

    @property
    def forms_all_zero(self) -> bool:
        return all(w.is_zero() for w in self.form_weights)

    def validate(self, refl: ReflectionData):
        if len(self.form_weights) != refl.n_forms:
            raise ValueError(
                f"expected {refl.n_forms} form weights, got {len(self.form_weights)}")
        reps = set(refl.class_reps)
        for r, _ in self.class_weights:
            if r not in reps:
                raise ValueError(f"{r} is not an admissible class representative "
                                 f"(valid: {sorted(reps)})")


def commutator_from_params(refl: ReflectionData, params: DeformationParams) -> CommutatorMap:
    """The commutator map with the given form and class weights."""
    params.validate(refl)
    G = refl.group
    omega = refl.combined_form(params.form_weights)
    zero = CycNum.zero()
    table = {}
    for (i, j) in basis_pairs(G.dim):
        coeffs = [zero] * G.order
        coeffs[0] = omega.evaluate_basis(i, j)
        for cls in refl.classes:
            c = params.class_weight(cls[0])
            if c.is_zero():
                continue
            for s in cls:
                coeffs[s] = coeffs[s] + c * refl.plane_forms[s].evaluate_basis(i, j)
        table[(i, j)] = tuple(coeffs)
    return CommutatorMap(G.dim, G.order, table)


# -- the linear system ------------------------------------------------------


def _pair_sign(i: int, j: int, pos: dict):
    if i == j:
        return None
    if i < j:
        return pos[(i, j)], 1
    return pos[(j, i)], -1


def _tensor_intersection(n: int, conductor: int) -> list[Vector]:
    """Basis of (commutators (x) V) meet (V (x) commutators) in V^(x)3."""
    if n < 3:
        return []
    one, zero = CycNum.one(conductor), CycNum.zero(conductor)

    def flat(i, j, k):
        return (i * n + j) * n + k

    left = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                v = [zero] * n ** 3
                v[flat(i, j, k)] = one
                v[flat(j, i, k)] = -one
                left.append(tuple(v))
    right = []
    for i in range(n):
        for j in range(n):
            for k in range(j + 1, n):
                v = [zero] * n ** 3
                v[flat(i, j, k)] = one
                v[flat(i, k, j)] = -one
                right.append(tuple(v))
    return linalg.intersect_spans(left, right)


def constraint_matrix(G: Group) -> Mat | None:
    """Rows cutting out the valid commutator maps; None when no constraints."""
    n, order = G.dim, G.order
    pairs = basis_pairs(n)
    pos = {p: k for k, p in enumerate(pairs)}
    width = len(pairs) * order
    if width == 0:
        return None
    zero, one = CycNum.zero(G.conductor), CycNum.one(G.conductor)
    rows = []

    # Equivariance under each generator.
    for gi in sorted(set(G.generators)):
        g = G.elements[gi]
        for (i, j) in pairs:
            for h in range(order):
                row = [zero] * width
                for (k, l) in pairs:
                    c = g[k, i] * g[l, j] - g[l, i] * g[k, j]
                    if c:
                        row[pos[(k, l)] * order + h] = row[pos[(k, l)] * order + h] + c
                conj = G.conjugate(h, gi)
                col = pos[(i, j)] * order + conj
                row[col] = row[col] - one
                rows.append(row)

    # Mixed associativity constraints on the tensor intersection, expanded in
    # the basis {v_l g} after straightening.
    for tensor in _tensor_intersection(n, G.conductor):
        support = [(idx, c) for idx, c in enumerate(tensor) if c]
        for h in range(order):
            hmat = G.elements[h]
            grid = [[zero] * width for _ in range(n)]
            touched = [False] * n
            for idx, a in support:
                k = idx % n
                j = (idx // n) % n
                i = idx // (n * n)
                ps = _pair_sign(j, k, pos)
                if ps is not None:
                    p, sgn = ps
                    col = p * order + h
                    grid[i][col] = grid[i][col] + (a if sgn > 0 else -a)
                    touched[i] = True
                ps = _pair_sign(i, j, pos)
                if ps is not None:
                    p, sgn = ps
                    col = p * order + h
                    for l in range(n):
                        c = hmat[l, k]
                        if c:
                            val = a * c
                            grid[l][col] = grid[l][col] - (val if sgn > 0 else -val)
                            touched[l] = True
            for l in range(n):
                if touched[l]:
                    rows.append(grid[l])

    if not rows:
        return None
    return Mat(tuple(tuple(r) for r in rows))


def check_equivariance(G: Group, cmap: CommutatorMap) -> bool:
    """kappa(g v, g w) = g kappa(v, w) g^-1 for every group element."""
    for gi in range(G.order):
        g = G.elements[gi]
        for (i, j) in basis_pairs(G.dim):
            lhs = cmap.evaluate(g.column(i), g.column(j))
            coeffs = cmap.coefficients(i, j)
            rhs = tuple(coeffs[G.conjugate(h, gi)] for h in range(G.order))
            if lhs != rhs:
                return False
    return True


def deformation_space_basis(G: Group) -> list[CommutatorMap]:
    """Canonical basis of all valid commutator maps, from the linear system."""
    pairs = basis_pairs(G.dim)
    if not pairs:
        return []
    M = constraint_matrix(G)
    if M is None:
        width = len(pairs) * G.order
        one, zero = CycNum.one(), CycNum.zero()
        kernel = [tuple(one if k == t else zero for k in range(width))
                  for t in range(width)]
    else:
        kernel = linalg.kernel_basis(M)
    basis = [CommutatorMap.from_vector(G.dim, G.order, v) for v in kernel]
    for cmap in basis:
        assert check_equivariance(G, cmap), \
            "solution violates equivariance for a non-generator element"
    return basis


# -- round trip between parameters and maps ---------------------------------


def params_from_commutator(refl: ReflectionData, cmap: CommutatorMap) -> DeformationParams | None:
    """Recover the parameters of a map; None when it is not of the valid shape."""
    G = refl.group
    pairs = basis_pairs(G.dim)
    idform = cmap.identity_form(G.conductor)
    if refl.n_forms == 0:
        if not idform.is_zero():
            return None
        weights: list[CycNum] = []
    else:
        cols = [tuple(f.evaluate_basis(i, j) for (i, j) in pairs)
                for f in refl.invariant_forms]
        target = tuple(idform.evaluate_basis(i, j) for (i, j) in pairs)
        A = Mat.from_columns([tuple(c) for c in cols])
        B = Mat.from_columns([target])
        try:
            X = linalg.solve_matrix(A, B)
        except ValueError:
            return None
        weights = [X[k, 0] for k in range(refl.n_forms)]
    class_weights = {}
    for cls in refl.classes:
        rep = cls[0]
        form = refl.plane_forms[rep]
        pair = next((i, j) for (i, j) in pairs if form.evaluate_basis(i, j))
        class_weights[rep] = cmap.coefficient(*pair, rep) / form.evaluate_basis(*pair)
    return DeformationParams.make(weights, class_weights)


@dataclass
class CrosscheckReport:
    ok: bool
    dim_solution: int
    dim_expected: int
    constraints_ok: bool
    parameterization_ok: bool
    support_ok: bool
    messages: list[str]


def parameter_generators(refl: ReflectionData) -> list[CommutatorMap]:
    """One commutator map per form weight and per admissible class."""
    gens = []
    for i in range(refl.n_forms):
        weights = [0] * refl.n_forms
        weights[i] = 1
        gens.append(commutator_from_params(
            refl, DeformationParams.make(weights, {r: 0 for r in refl.class_reps})))
    for rep in refl.class_reps:
        cw = {r: (1 if r == rep else 0) for r in refl.class_reps}
        gens.append(commutator_from_params(
            refl, DeformationParams.make([0] * refl.n_forms, cw)))
    return gens


def classification_crosscheck(refl: ReflectionData,
                              basis: list[CommutatorMap]) -> CrosscheckReport:
    """Certify that the parameter family and the linear system span the same space."""
    G = refl.group
    messages: list[str] = []
    expected = refl.n_forms + len(refl.classes)

    M = constraint_matrix(G)
    constraints_ok = True
    for k, gen in enumerate(parameter_generators(refl)):
        if M is not None:
            image = M.apply(gen.as_vector())
            if any(image):
                constraints_ok = False
                messages.append(f"parameter generator {k} violates the linear system")

    parameterization_ok = True
    for k, cmap in enumerate(basis):
        params = params_from_commutator(refl, cmap)
        if params is None or commutator_from_params(refl, params) != cmap:
            parameterization_ok = False
            messages.append(f"solution basis element {k} is not of parameter shape")

    allowed = set(refl.subgroup) | {0}
    support_ok = all(cmap.support() <= allowed for cmap in basis)
    if not support_ok:
        messages.append("a solution is supported outside the bireflection subgroup")

    dims_ok = len(basis) == expected
    if not dims_ok:
        messages.append(f"dimension mismatch: solution space {len(basis)}, "
                        f"parameter count {expected}")

    return CrosscheckReport(
        ok=dims_ok and constraints_ok and parameterization_ok and support_ok,
        dim_solution=len(basis), dim_expected=expected,
        constraints_ok=constraints_ok, parameterization_ok=parameterization_ok,
        support_ok=support_ok, messages=messages,
    )
