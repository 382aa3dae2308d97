"""Normal-form arithmetic in a deformed skew group algebra.

Elements are written on the basis of ordered monomials times a group element
on the right.  Two rewriting rules bring any word into this shape:

  (R1)  g . v_i        ->  sum_l  g[l, i] v_l . g
  (R2)  v_j . v_i      ->  v_i . v_j + kappa(v_j, v_i)      for j > i

Rule R2 strictly lowers polynomial degree in its correction term (the
commutator value sits in the group algebra), which is what makes the
rewriting terminate and the probes in `center` well-behaved.

Straightening of a single variable into an ordered monomial is memoized per
algebra, which keeps repeated commutator probes fast.
"""

from __future__ import annotations

from math import comb, lcm

from .cyclo import CycNum, as_cycnum
from .deformations import CommutatorMap
from .groups import Group

Term = tuple[tuple[int, ...], int]  # (exponent vector, group index)


class AlgebraElement:
    """Finitely supported map (exponent vector, group index) -> coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean = {}
        if terms:
            for key, c in terms.items():
                if c:
                    clean[key] = c
        self.terms = clean

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for key, c in other.terms.items():
            prev = out.get(key)
            out[key] = c if prev is None else prev + c
        return AlgebraElement(out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for key, c in other.terms.items():
            prev = out.get(key)
            out[key] = -c if prev is None else prev - c
        return AlgebraElement(out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({k: -c for k, c in self.terms.items()})

    def scale(self, c) -> "AlgebraElement":
        c = as_cycnum(c)
        if not c:
            return AlgebraElement()
        return AlgebraElement({k: c * v for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Filtration degree: largest total exponent in the support (-1 if zero)."""
        return max((sum(e) for e, _ in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "AlgebraElement":
        return AlgebraElement({(e, g): c for (e, g), c in self.terms.items()
                               if sum(e) == d})

    def group_part(self, g: int) -> dict:
        """Polynomial coefficients sitting against one group element."""
        return {e: c for (e, h), c in self.terms.items() if h == g}

    def group_support(self) -> set[int]:
        return {g for _, g in self.terms}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0][0]), kv[0][0], kv[0][1]))

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (e, g), c in self.sorted_terms():
            mono = "".join(f"v{i + 1}^{k}" if k > 1 else f"v{i + 1}"
                           for i, k in enumerate(e) if k)
            gpart = f"g{g}" if g else ""
            body = (mono + gpart) or "1"
            bits.append(f"({c!r})*{body}")
        return " + ".join(bits)


class DeformedAlgebra:
    """Rewriting engine for one group and one commutator map."""

    def __init__(self, group: Group, cmap: CommutatorMap):
        if cmap.dim != group.dim or cmap.group_order != group.order:
            raise ValueError("commutator map does not match the group")
        self.group = group
        self.cmap = cmap
        m = group.conductor
        for coeffs in cmap.table.values():
            for c in coeffs:
                m = lcm(m, c.conductor)
        self.conductor = m
        self._mats = tuple(
            tuple(tuple(e.to_conductor(m) if e.conductor != m else e for e in row)
                  for row in g.entries)
            for g in group.elements
        )
        self._insert_memo: dict = {}
        self._zero_exp = (0,) * group.dim

    # -- constructors ---------------------------------------------------

    def zero(self) -> AlgebraElement:
        return AlgebraElement()

    def one(self) -> AlgebraElement:
        return AlgebraElement({(self._zero_exp, 0): CycNum.one()})

    def monomial(self, exponents, g: int = 0, coeff=1) -> AlgebraElement:
        e = tuple(exponents)
        if len(e) != self.group.dim:
            raise ValueError("exponent vector has wrong length")
        return AlgebraElement({(e, g): as_cycnum(coeff)})

    def variable(self, i: int) -> AlgebraElement:
        e = list(self._zero_exp)
        e[i] = 1
        return self.monomial(e)

    def group_element(self, g: int) -> AlgebraElement:
        return AlgebraElement({(self._zero_exp, g): CycNum.one()})

    # -- core rewriting ---------------------------------------------------

    def _insert(self, e: tuple[int, ...], l: int) -> AlgebraElement:
        """Normal form of (ordered monomial e) * v_l."""
        memo = self._insert_memo
        cached = memo.get((e, l))
        if cached is not None:
            return cached
        top = max((i for i, k in enumerate(e) if k), default=-1)
        if top <= l:
            out = list(e)
            out[l] += 1
            result = AlgebraElement({(tuple(out), 0): CycNum.one()})
        else:
            j = top
            shrunk = list(e)
            shrunk[j] -= 1
            shrunk = tuple(shrunk)
            # v^e v_l = (v^shrunk v_l) v_j + v^shrunk kappa(v_j, v_l)
            acc: dict = {}
            for (f, h), c in self._insert(shrunk, l).terms.items():
                for key, d in self._term_times_variable(f, h, j).terms.items():
                    prev = acc.get(key)
                    val = c * d
                    acc[key] = val if prev is None else prev + val
            for g, c in enumerate(self.cmap.coefficients(j, l)):
                if c:
                    key = (shrunk, g)
                    prev = acc.get(key)
                    acc[key] = c if prev is None else prev + c
            result = AlgebraElement(acc)
        memo[(e, l)] = result
        return result

    def _term_times_variable(self, e: tuple[int, ...], g: int, i: int) -> AlgebraElement:
        """Normal form of (v^e g) * v_i via rule R1 then straightening."""
        if g == 0:
            return self._insert(e, i)
        mat = self._mats[g]
        mult_row = self.group.mult_table
        acc: dict = {}
        for l in range(self.group.dim):
            c = mat[l][i]
            if not c:
                continue
            for (f, h), d in self._insert(e, l).terms.items():
                key = (f, mult_row[h][g])
                val = c * d
                prev = acc.get(key)
                acc[key] = val if prev is None else prev + val
        return AlgebraElement(acc)

    def _times_variable(self, elem: AlgebraElement, i: int) -> AlgebraElement:
        acc: dict = {}
        for (e, g), c in elem.terms.items():
            for key, d in self._term_times_variable(e, g, i).terms.items():
                val = c * d
                prev = acc.get(key)
                acc[key] = val if prev is None else prev + val
        return AlgebraElement(acc)

    def _times_group(self, elem: AlgebraElement, k: int) -> AlgebraElement:
        mult = self.group.mult_table
        return AlgebraElement({(e, mult[g][k]): c for (e, g), c in elem.terms.items()})

    # -- public operations ------------------------------------------------

    def normal_form(self, word) -> AlgebraElement:
        """Normal form of a word of letters ('v', i) and ('g', k)."""
        elem = self.one()
        for kind, idx in word:
            if kind == "v":
                if not 0 <= idx < self.group.dim:
                    raise ValueError(f"variable index {idx} out of range")
                elem = self._times_variable(elem, idx)
            elif kind == "g":
                if not 0 <= idx < self.group.order:
                    raise ValueError(f"group index {idx} out of range")
                elem = self._times_group(elem, idx)
            else:
                raise ValueError(f"unknown letter kind {kind!r}")
        return elem

    def multiply(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        out = AlgebraElement()
        for (f, h), d in b.terms.items():
            cur = a
            for i in range(self.group.dim):
                for _ in range(f[i]):
                    cur = self._times_variable(cur, i)
            if h:
                cur = self._times_group(cur, h)
            out = out + cur.scale(d)
        return out

    def commutator(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        return self.multiply(a, b) - self.multiply(b, a)

    def power(self, a: AlgebraElement, k: int) -> AlgebraElement:
        result = self.one()
        for _ in range(k):
            result = self.multiply(result, a)
        return result


def word_of_monomial(e: tuple[int, ...], g: int = 0) -> list:
    word = []
    for i, k in enumerate(e):
        word.extend([("v", i)] * k)
    if g:
        word.append(("g", g))
    return word


# -- certification ------------------------------------------------------------


class OverlapWitness:
    """First non-resolving overlap, kept for reporting."""

    def __init__(self, kind: str, indices: tuple, difference: AlgebraElement):
        self.kind = kind
        self.indices = indices
        self.difference = difference

    def describe(self) -> str:
        return f"{self.kind} overlap at {self.indices}"

    def __repr__(self):
        return f"OverlapWitness({self.describe()}, diff={self.difference!r})"


def overlap_check(algebra: DeformedAlgebra) -> OverlapWitness | None:
    """Resolve all degree-3 and generator overlaps; None means all resolved.

    For k > j > i the word v_k v_j v_i is reduced once at the left pair and
    once at the right pair, and both one-step reducts are brought to normal
    form.  For each group generator the word g v_j v_i is treated the same
    way.  Any disagreement is returned as a witness.
    """
    G, cmap = algebra.group, algebra.cmap
    n = G.dim

    def nf_of_combination(parts) -> AlgebraElement:
        total = algebra.zero()
        for word, coeff in parts:
            total = total + algebra.normal_form(word).scale(coeff)
        return total

    one = CycNum.one()
    for k in range(n):
        for j in range(k):
            for i in range(j):
                # left-first: (v_k v_j) v_i -> v_j v_k v_i + kappa(k, j) v_i
                left = [([("v", j), ("v", k), ("v", i)], one)]
                for g, c in enumerate(cmap.coefficients(k, j)):
                    if c:
                        left.append(([("g", g), ("v", i)], c))
                # right-first: v_k (v_j v_i) -> v_k v_i v_j + v_k kappa(j, i)
                right = [([("v", k), ("v", i), ("v", j)], one)]
                for g, c in enumerate(cmap.coefficients(j, i)):
                    if c:
                        right.append(([("v", k), ("g", g)], c))
                diff = nf_of_combination(left) - nf_of_combination(right)
                if not diff.is_zero():
                    return OverlapWitness("variable", (k, j, i), diff)

    for gi in sorted(set(G.generators)):
        mat = G.elements[gi]
        for j in range(n):
            for i in range(j):
                # left-first: (g v_j) v_i
                left = []
                for l in range(n):
                    c = mat[l, j]
                    if c:
                        left.append(([("v", l), ("g", gi), ("v", i)], c))
                # right-first: g (v_j v_i)
                right = [([("g", gi), ("v", i), ("v", j)], one)]
                for g, c in enumerate(cmap.coefficients(j, i)):
                    if c:
                        right.append(([("g", gi), ("g", g)], c))
                diff = nf_of_combination(left) - nf_of_combination(right)
                if not diff.is_zero():
                    return OverlapWitness("generator", (gi, j, i), diff)
    return None


def all_words(algebra: DeformedAlgebra, max_len: int):
    """Every word of length <= max_len over variables and group generators."""
    letters = [("v", i) for i in range(algebra.group.dim)]
    letters += [("g", k) for k in sorted(set(algebra.group.generators))]
    words = [[]]
    frontier = [[]]
    for _ in range(max_len):
        frontier = [w + [l] for w in frontier for l in letters]
        words.extend(frontier)
    return words


def scaling_check(group: Group, cmap: CommutatorMap, mu, max_len: int = 3) -> bool:
    """Certify the isomorphism that rescales variables by mu between the
    algebras with commutator maps mu^2 * kappa and kappa.

    For every word w of length <= max_len the normal form taken at the scaled
    map, with each basis term v^e g rescaled by mu^|e|, must equal mu^p times
    the normal form at the original map, where p counts variable letters.
    """
    mu = as_cycnum(mu)
    if not mu:
        raise ValueError("mu must be nonzero")
    lam = mu * mu
    base = DeformedAlgebra(group, cmap)
    scaled = DeformedAlgebra(group, cmap.scaled(lam))
    mu_pows = [CycNum.one()]
    for _ in range(max_len + 1):
        mu_pows.append(mu_pows[-1] * mu)
    for word in all_words(base, max_len):
        p = sum(1 for kind, _ in word if kind == "v")
        nf_scaled = scaled.normal_form(word)
        lhs = AlgebraElement({(e, g): mu_pows[sum(e)] * c
                              for (e, g), c in nf_scaled.terms.items()})
        rhs = base.normal_form(word).scale(mu_pows[p])
        if lhs != rhs:
            return False
    return True


def monomial_count_check(algebra: DeformedAlgebra, degree: int) -> bool:
    """The basis monomials of degree <= `degree` are normal-form fixed points
    and there are exactly C(n + degree, degree) * |G| of them."""
    n, order = algebra.group.dim, algebra.group.order
    count = 0
    for e in _exponents_up_to(n, degree):
        for g in range(order):
            count += 1
            nf = algebra.normal_form(word_of_monomial(e, g))
            if nf != algebra.monomial(e, g):
                return False
    return count == comb(n + degree, degree) * order


def _exponents_up_to(n: int, degree: int):
    if n == 0:
        yield ()
        return
    for total in range(degree + 1):
        yield from _exponents_of(n, total)


def _exponents_of(n: int, total: int):
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _exponents_of(n - 1, total - first):
            yield (first,) + rest
