"""Auxiliary-fermion resource planning: paths, non-local degrees, qubit counts.

The planner lays a Hamiltonian path (a boustrophedon snake) through each
spin sublattice, counts every vertex's non-local degree (lattice degree
minus path degree) and allocates one auxiliary mode per two non-local
couplings.  Only resources and per-term-class localities are reported;
the auxiliary operators themselves are not synthesized here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence


def snake_path(w: int, h: int) -> tuple[int, ...]:
    """Boustrophedon visit order of the w x h grid, row-major vertex ids.

    Rows are walked from the last row towards row 0, the first of them
    left to right.  Starting opposite the id origin makes both row-0
    corners path turns, which is the auxiliary placement the reference
    census tabulates.
    """
    if w < 1 or h < 1:
        raise ValueError("grid dimensions must be at least 1")
    path = []
    for i, r in enumerate(range(h - 1, -1, -1)):
        cols = range(w) if i % 2 == 0 else range(w - 1, -1, -1)
        path.extend(r * w + c for c in cols)
    return tuple(path)


def snake_path_hypercubic(dim: int, w: int) -> tuple[int, ...]:
    """Reflected-raster Hamiltonian path through the w^dim hypercube."""
    if dim < 1 or w < 1:
        raise ValueError("need dim >= 1 and w >= 1")

    def walk(d: int) -> list[tuple[int, ...]]:
        if d == 0:
            return [()]
        inner = walk(d - 1)
        out = []
        for i in range(w):
            block = inner if i % 2 == 0 else inner[::-1]
            out.extend(coords + (i,) for coords in block)
        return out

    return tuple(
        sum(c * w**axis for axis, c in enumerate(coords)) for coords in walk(dim)
    )


def _grid_adjacency(dims: Sequence[int]) -> list[set[int]]:
    """Neighbour sets of a product-of-paths grid with mixed-radix ids."""
    strides = []
    acc = 1
    for d in dims:
        strides.append(acc)
        acc *= d
    n = acc
    adj: list[set[int]] = [set() for _ in range(n)]
    for coords in itertools.product(*(range(d) for d in dims)):
        here = sum(c * s for c, s in zip(coords, strides))
        for axis, d in enumerate(dims):
            if coords[axis] + 1 < d:
                there = here + strides[axis]
                adj[here].add(there)
                adj[there].add(here)
    return adj


@dataclass(frozen=True)
class AuxPlan:
    """Resource plan for one two-spin lattice model."""

    dims: tuple[int, ...]  # (w, h) for rectangles, (w,) * D for hypercubes
    path: tuple[int, ...]
    degree: tuple[int, ...]
    path_degree: tuple[int, ...]
    nonlocal_degree: tuple[int, ...]
    aux_per_site: tuple[int, ...]
    formula_qubits: int

    @property
    def n_sites(self) -> int:
        return len(self.path)

    @property
    def per_spin_qubits(self) -> int:
        return self.n_sites + sum(self.aux_per_site)

    @property
    def total_qubits(self) -> int:
        """Both spin copies: 2 * (sites + auxiliaries per sublattice)."""
        return 2 * self.per_spin_qubits


def _plan_from_path(dims: Sequence[int], path: Sequence[int], formula: int) -> AuxPlan:
    adj = _grid_adjacency(dims)
    n = len(adj)
    path_deg = [0] * n
    for a, b in zip(path, path[1:]):
        if b not in adj[a]:
            raise AssertionError("path step is not a lattice edge")
        path_deg[a] += 1
        path_deg[b] += 1
    degree = tuple(len(adj[v]) for v in range(n))
    d_nl = tuple(degree[v] - path_deg[v] for v in range(n))
    if any(d < 0 for d in d_nl):
        raise AssertionError("path is not a subgraph of the lattice")
    aux = tuple((d + 1) // 2 for d in d_nl)
    return AuxPlan(
        dims=tuple(dims),
        path=tuple(path),
        degree=degree,
        path_degree=tuple(path_deg),
        nonlocal_degree=d_nl,
        aux_per_site=aux,
        formula_qubits=formula,
    )


def plan(w: int, h: int) -> AuxPlan:
    """Two-spin rectangular plan; total qubit count is 4wh - 4."""
    if w < 2 or h < 2:
        raise ValueError("rectangular planning needs w, h >= 2")
    return _plan_from_path((w, h), snake_path(w, h), 4 * w * h - 4)


def plan_hypercubic(dim: int, w: int) -> AuxPlan:
    """Hypercubic plan; the headline table counts 2 * dim * w**dim qubits.

    The exact census (``total_qubits``) is smaller at finite ``w``
    because boundary sites fall short of the bulk non-local degree
    2 * dim - 2; ``formula_qubits`` carries the tabulated scaling value.
    """
    if dim < 1 or w < 2:
        raise ValueError("hypercubic planning needs dim >= 1 and w >= 2")
    return _plan_from_path(
        (w,) * dim, snake_path_hypercubic(dim, w), 2 * dim * w**dim
    )


def locality_profile(plan_: AuxPlan) -> dict[str, int]:
    """Worst-case qubit locality per Hamiltonian term class.

    Consecutive-path hops act on two qubits; a non-local hop also
    touches one auxiliary at each endpoint.  Density-density terms pair
    two number operators and stay 2-local.  For hypercubes the headline
    table value 2*dim is reported along with the bulk-path estimate
    2*dim - 2, which the source analyses quote inconsistently.
    """
    dims = plan_.dims
    if len(dims) == 2:
        w, h = dims
        profile = {"density-density": 2, "horizontal": 2}
        if w >= 2 and h >= 2:
            profile["vertical"] = 4
        return profile
    dim = len(dims)
    if dim == 1:
        return {"density-density": 2, "hop": 2}
    return {
        "density-density": 2,
        "hop": 2 * dim,
        "hop-text-variant": 2 * dim - 2,
    }
