"""Finite matrix groups: enumeration from generators and table-based queries.

A `Group` is closed under products and inverses, stores full multiplication
and inverse tables, and carries its conjugacy class partition.  The identity
always sits at index 0, and elements are deduplicated exactly (canonical
CycNum coordinates), so the action is faithful by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from . import linalg
from .cyclo import CycNum
from .linalg import Mat


class GroupTooLargeError(RuntimeError):
    """Closure exceeded the element cap (group too large or infinite)."""


DEFAULT_CAP = 2000


@dataclass(frozen=True)
class Group:
    dim: int
    conductor: int
    elements: tuple[Mat, ...]
    mult_table: tuple[tuple[int, ...], ...]
    inv_table: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    generators: tuple[int, ...]
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.elements)

    def mult(self, i: int, j: int) -> int:
        return self.mult_table[i][j]

    def inv(self, i: int) -> int:
        return self.inv_table[i]

    def conjugate(self, x: int, g: int) -> int:
        """Index of g^-1 x g."""
        return self.mult(self.mult(self.inv(g), x), g)

    def element_order(self, i: int) -> int:
        n, x = 1, i
        while x != 0:
            x = self.mult(x, i)
            n += 1
        return n

    def __repr__(self):
        return f"Group({self.name or 'unnamed'}, order={self.order}, dim={self.dim})"


def close_generators(gens: list[Mat], cap: int = DEFAULT_CAP, *,
                     dim: int | None = None, conductor: int | None = None,
                     name: str = "") -> Group:
    """Breadth-first closure of a generator list into a full Group.

    Raises GroupTooLargeError when more than `cap` elements appear, and
    ValueError for singular or dimension-mismatched generators.
    """
    if not gens:
        if dim is None:
            raise ValueError("dim is required when the generator list is empty")
        n, m = dim, conductor or 1
    else:
        n = gens[0].rows
        m = 1
        for g in gens:
            if g.rows != g.cols or g.rows != n:
                raise ValueError("generators must be square matrices of equal dimension")
            if not linalg.det(g):
                raise ValueError("singular generator")
            m = lcm(m, g.conductor)
        if conductor:
            m = lcm(m, conductor)

    identity = Mat.identity(n, m)
    gens = [Mat(tuple(tuple(e.to_conductor(m) for e in row) for row in g.entries))
            for g in gens]

    elements: list[Mat] = [identity]
    index: dict = {identity.entries: 0}
    parent: list[tuple[int, int]] = [(-1, -1)]  # (parent index, generator position)
    queue = [0]
    while queue:
        i = queue.pop(0)
        for k, g in enumerate(gens):
            prod = elements[i] @ g
            key = prod.entries
            if key not in index:
                if len(elements) >= cap:
                    raise GroupTooLargeError(
                        f"group closure exceeded cap={cap}; "
                        "raise the cap or check the generators")
                index[key] = len(elements)
                elements.append(prod)
                parent.append((i, k))
                queue.append(index[key])

    order = len(elements)
    gen_indices = []
    for g in gens:
        gen_indices.append(index[g.entries])

    # Multiplication table.  Products with generator elements are computed by
    # one matrix product each; everything else chases parent pointers.
    table = [[0] * order for _ in range(order)]
    for i in range(order):
        table[i][0] = i
        for k, g in enumerate(gens):
            table[i][gen_indices[k]] = index[(elements[i] @ g).entries]
    for j in range(1, order):
        p, k = parent[j]
        if p == -1:
            continue
        gj = gen_indices[k]
        if j == gj:
            continue
        for i in range(order):
            table[i][j] = table[table[i][p]][gj]

    inv_table = [0] * order
    for i in range(order):
        row = table[i]
        for j in range(order):
            if row[j] == 0:
                inv_table[i] = j
                break

    # Conjugacy classes, ordered by least member.
    class_of = [-1] * order
    classes = []
    for i in range(order):
        if class_of[i] != -1:
            continue
        orbit = set()
        for g in range(order):
            orbit.add(table[table[inv_table[g]][i]][g])
        cls = tuple(sorted(orbit))
        for x in cls:
            class_of[x] = len(classes)
        classes.append(cls)

    return Group(
        dim=n, conductor=m, elements=tuple(elements),
        mult_table=tuple(tuple(r) for r in table),
        inv_table=tuple(inv_table),
        classes=tuple(classes), class_of=tuple(class_of),
        generators=tuple(gen_indices), name=name,
    )


def centralizer(G: Group, s: int) -> list[int]:
    """All g with g s = s g, found by scanning the multiplication table."""
    return [g for g in range(G.order) if G.mult(g, s) == G.mult(s, g)]


def fixed_and_moved(G: Group, g: int):
    """Bases of ker(id - g) and im(id - g); checked to be complementary."""
    M = Mat.identity(G.dim, G.conductor) - G.elements[g]
    fixed = linalg.kernel_basis(M)
    moved = linalg.column_space_basis(M)
    assert len(fixed) + len(moved) == G.dim
    if fixed or moved:
        stacked = Mat.from_columns(fixed + moved)
        assert linalg.det(stacked), "fixed and moved spaces are not complementary"
    return fixed, moved


def element_det(G: Group, g: int) -> CycNum:
    return linalg.det(G.elements[g])
