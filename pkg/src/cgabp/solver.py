"""Branch & Prune search over the binary tree of torsion-sign choices.

Candidate positions come from the conformal versor construction; pruning
tests every known distance into the newly placed vertex.  Sibling
solutions can be reconstructed from one solution by reflecting suffixes
through predecessor planes instead of re-searching.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .conformal import carrier_plane, compute_next_points, embed_point, extract_point, reflect_in_plane
from .dmdgp import Instance, InternalCoords, internal_coordinates, validate_instance
from .errors import InfeasibleInstanceError, InvalidInstanceError
from .geometry import verify_realization


@dataclass(frozen=True)
class BranchPath:
    """Sign choices for vertices 4..n; entry k (0-based) governs vertex k + 4."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("branch signs must be +1 or -1")

    def __str__(self):
        return "".join("+" if s > 0 else "-" for s in self.signs)

    @classmethod
    def from_string(cls, text: str) -> "BranchPath":
        table = {"+": 1, "-": -1}
        try:
            return cls(tuple(table[ch] for ch in text))
        except KeyError as exc:
            raise ValueError(f"invalid branch character {exc.args[0]!r}") from None


@dataclass(frozen=True)
class SolveOptions:
    eps: float = 1e-4                 # pruning tolerance, angstroms
    mode: str = "all"                 # "all" | "first"
    max_solutions: int | None = None
    use_symmetry: bool = False
    parallel: bool = False
    workers: int = 4

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if self.mode not in ("all", "first"):
            raise ValueError(f"mode must be 'all' or 'first', got {self.mode!r}")
        if self.max_solutions is not None and self.max_solutions < 1:
            raise ValueError("max_solutions must be at least 1")


def initialize_first_three(coords: InternalCoords) -> np.ndarray:
    """Canonical anchor killing the rigid-motion freedom: x1 at the origin,
    x2 on the negative x-axis, x3 in the upper half of the xy-plane."""
    d12 = float(coords.bond_lengths[0])
    d23 = float(coords.bond_lengths[1])
    theta = float(coords.bond_angles[0])
    pts = np.zeros((3, 3))
    pts[1] = (-d12, 0.0, 0.0)
    # angle at x2 between the rays to x1 (+x direction) and x3 must be theta
    pts[2] = pts[1] + d23 * np.array([math.cos(theta), math.sin(theta), 0.0])
    return pts


def prune_check(partial: np.ndarray, inst: Instance, eps: float) -> bool:
    """Feasibility of the last placed vertex against all known distances to it."""
    i = len(partial)
    x = partial[i - 1]
    for j, d in inst.neighbors_below(i):
        if abs(np.linalg.norm(x - partial[j - 1]) - d) > eps:
            return False
    return True


def _torsion_magnitude(coords: InternalCoords, vertex: int) -> float:
    c = float(coords.dihedral_cos[vertex - 4])
    return math.acos(min(1.0, max(-1.0, c)))


def _candidates(points: np.ndarray, coords: InternalCoords, vertex: int):
    """Both torsion-sign placements for ``vertex`` given placed prefix."""
    a, b, c = (embed_point(points[vertex - 4 + k]) for k in range(3))
    theta = float(coords.bond_angles[vertex - 3])
    omega = _torsion_magnitude(coords, vertex)
    d = float(coords.bond_lengths[vertex - 2])
    plus, minus = compute_next_points(a, b, c, theta, omega, d)
    return extract_point(plus), extract_point(minus)


def _search(inst: Instance, coords: InternalCoords, prefix: np.ndarray,
            signs: list[int], opts: SolveOptions, out: list) -> bool:
    """Depth-first extension of ``prefix``; returns True when the caller
    should stop (solution cap reached)."""
    i = len(prefix) + 1
    if i > inst.n:
        realization = prefix.copy()
        max_viol, _ = verify_realization(inst, realization, opts.eps)
        if max_viol <= opts.eps:
            out.append((realization, BranchPath(tuple(signs))))
            if opts.mode == "first":
                return True
            if opts.max_solutions is not None and len(out) >= opts.max_solutions:
                return True
        return False
    plus, minus = _candidates(prefix, coords, i)
    for sign, candidate in ((1, plus), (-1, minus)):
        extended = np.vstack([prefix, candidate])
        if not prune_check(extended, inst, opts.eps):
            continue
        signs.append(sign)
        stop = _search(inst, coords, extended, signs, opts, out)
        signs.pop()
        if stop:
            return True
    return False


def _subtree_roots(inst: Instance, coords: InternalCoords, anchor: np.ndarray,
                   eps: float, depth: int):
    """Feasible partial placements down to vertex 3 + depth, for fan-out."""
    roots = [(anchor, [])]
    for vertex in range(4, min(3 + depth, inst.n) + 1):
        nxt = []
        for prefix, signs in roots:
            plus, minus = _candidates(prefix, coords, vertex)
            for sign, candidate in ((1, plus), (-1, minus)):
                extended = np.vstack([prefix, candidate])
                if prune_check(extended, inst, eps):
                    nxt.append((extended, signs + [sign]))
        roots = nxt
    return roots


def solve(inst: Instance, opts: SolveOptions = SolveOptions()):
    """All (or the first) realizations of a discretizable instance.

    Returns a list of (realization, branch path) pairs in deterministic
    depth-first order (the + branch is explored before -).  An instance
    with no realization yields an empty list; a non-discretizable one
    raises InvalidInstanceError.
    """
    report = validate_instance(inst)
    if not report.is_dmdgp:
        raise InvalidInstanceError(report)
    try:
        coords = internal_coordinates(inst)
    except InfeasibleInstanceError:
        return []
    anchor = initialize_first_three(coords)
    if not prune_check(anchor[:2], inst, opts.eps) or not prune_check(anchor, inst, opts.eps):
        return []
    if inst.n == 3:
        return [(anchor, BranchPath(()))]
    if opts.use_symmetry:
        return _solve_symmetric(inst, opts, coords, anchor)
    if opts.parallel and opts.mode == "all":
        return _solve_parallel(inst, opts, coords, anchor)
    out: list = []
    _search(inst, coords, anchor, [], opts, out)
    return out


def _solve_parallel(inst, opts, coords, anchor):
    depth = max(1, min(opts.workers.bit_length() + 1, inst.n - 3))
    roots = _subtree_roots(inst, coords, anchor, opts.eps, depth)
    seq_opts = replace(opts, parallel=False, max_solutions=None)

    def run(root):
        prefix, signs = root
        out: list = []
        _search(inst, coords, prefix, list(signs), seq_opts, out)
        return out

    solutions: list = []
    with ThreadPoolExecutor(max_workers=opts.workers) as pool:
        for chunk in pool.map(run, roots):
            solutions.extend(chunk)
    solutions.sort(key=lambda sol: tuple(sol[1].signs))
    if opts.max_solutions is not None:
        solutions = solutions[: opts.max_solutions]
    return solutions


def reflect_suffix(realization: np.ndarray, vertex: int) -> np.ndarray:
    """Reflect points vertex..n through the plane of the three predecessors.

    An involution; it flips the torsion signs of every vertex from
    ``vertex`` on while preserving all distances within the prefix and
    within the suffix.
    """
    r = np.asarray(realization, dtype=float)
    if not 4 <= vertex <= len(r):
        raise ValueError(f"reflection vertex must be in 4..n, got {vertex}")
    plane = carrier_plane(*(embed_point(r[vertex - 4 + k]) for k in range(3)))
    out = r.copy()
    for idx in range(vertex - 1, len(r)):
        out[idx] = extract_point(reflect_in_plane(plane, embed_point(r[idx])))
    return out


def expand_by_symmetry(base, targets, inst: Instance, eps: float = 1e-4):
    """Realizations for ``targets`` built from one solved (realization, path).

    Walking vertices in ascending order, a reflection is applied wherever
    the current sign differs from the target (each reflection flips the
    whole suffix, so planes are recomputed from the updated points).
    Results violating any instance distance by more than ``eps`` are
    silently dropped.
    """
    base_realization, base_path = base
    out = []
    for target in targets:
        signs = list(base_path.signs)
        if len(target.signs) != len(signs):
            raise ValueError("target path length does not match base")
        r = np.asarray(base_realization, dtype=float).copy()
        for vertex in range(4, inst.n + 1):
            k = vertex - 4
            if signs[k] != target.signs[k]:
                r = reflect_suffix(r, vertex)
                for j in range(k, len(signs)):
                    signs[j] = -signs[j]
        max_viol, _ = verify_realization(inst, r, eps)
        if max_viol <= eps:
            out.append(r)
    return out


def _solve_symmetric(inst, opts, coords, anchor):
    """First DFS solution, then reconstruction of the rest by reflections."""
    first: list = []
    _search(inst, coords, anchor, [], replace(opts, mode="first", use_symmetry=False,
                                              parallel=False, max_solutions=None), first)
    if not first:
        return []
    base = first[0]
    solutions = []
    all_paths = (BranchPath(signs) for signs in
                 itertools.product((1, -1), repeat=inst.n - 3))
    for path in all_paths:
        for r in expand_by_symmetry(base, [path], inst, opts.eps):
            solutions.append((r, path))
        if opts.max_solutions is not None and len(solutions) >= opts.max_solutions:
            break
        if opts.mode == "first" and solutions:
            break
    return solutions
