"""Built-in example algebras addressable by name.

Names are case-sensitive.  The abelian family is parametric: request
"abelian:N" for the N-dimensional algebra with zero bracket.  "n3" is
an alias for the Heisenberg algebra.
"""

from __future__ import annotations

from .errors import InputError
from .lie import LieAlgebra

_FIXED: dict[str, tuple[str, tuple[str, ...], dict]] = {
    "heisenberg": (
        "Heisenberg algebra: [x, y] = z, z central",
        ("x", "y", "z"),
        {(0, 1): {2: 1}},
    ),
    "heisenberg5": (
        "five-dimensional Heisenberg algebra: [x1, y1] = [x2, y2] = z",
        ("x1", "y1", "x2", "y2", "z"),
        {(0, 1): {4: 1}, (2, 3): {4: 1}},
    ),
    "solv2": (
        "two-dimensional solvable algebra: [e1, e2] = e2",
        ("e1", "e2"),
        {(0, 1): {1: 1}},
    ),
    "jordan3": (
        "solvable algebra whose generator acts on its radical by a Jordan block",
        ("e1", "e2", "e3"),
        {(0, 1): {1: 1}, (0, 2): {1: 1, 2: 1}},
    ),
    "rot3": (
        "rotation acting on the plane: [e1, e2] = e3, [e1, e3] = -e2",
        ("e1", "e2", "e3"),
        {(0, 1): {2: 1}, (0, 2): {1: -1}},
    ),
    "sl2": (
        "traceless 2x2 matrices: [h, e] = 2e, [h, f] = -2f, [e, f] = h",
        ("h", "e", "f"),
        {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}},
    ),
    "gl2": (
        "all 2x2 matrices: sl2 plus a central identity",
        ("h", "e", "f", "id"),
        {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}},
    ),
    "t3": (
        "upper triangular 3x3 matrices",
        ("h1", "h2", "h3", "e12", "e13", "e23"),
        {
            (0, 3): {3: 1},
            (0, 4): {4: 1},
            (1, 3): {3: -1},
            (1, 5): {5: 1},
            (2, 4): {4: -1},
            (2, 5): {5: -1},
            (3, 5): {4: 1},
        },
    ),
}

_ALIASES = {"n3": "heisenberg"}


def catalog_names() -> list[str]:
    """All addressable names; the abelian family is listed symbolically."""
    return ["abelian:N"] + sorted(_FIXED) + sorted(_ALIASES)


def catalog_entry(name: str) -> tuple[str, tuple[str, ...], LieAlgebra]:
    """Description, basis labels and algebra for a catalog name."""
    if name.startswith("abelian:"):
        raw = name.split(":", 1)[1]
        try:
            n = int(raw)
        except ValueError:
            n = -1
        if n < 0:
            raise InputError(
                "catalog",
                "abelian:N needs a nonnegative integer N",
                name=name,
            )
        labels = tuple(f"e{i + 1}" for i in range(n))
        return (
            f"abelian algebra of dimension {n}",
            labels,
            LieAlgebra.from_sparse(n, {}),
        )
    resolved = _ALIASES.get(name, name)
    if resolved not in _FIXED:
        raise InputError(
            "catalog",
            "unknown catalog name",
            name=name,
            available=catalog_names(),
        )
    description, labels, brackets = _FIXED[resolved]
    return description, labels, LieAlgebra.from_sparse(len(labels), brackets)


def catalog_algebra(name: str) -> LieAlgebra:
    return catalog_entry(name)[2]
