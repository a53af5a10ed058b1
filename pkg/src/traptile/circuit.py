"""Electrical circuit of a tiling and its exactly solved potential.

Vertices are midpoints of cuts (maximal segments in the union of piece
bases).  A piece with lower base b1 on cut B1, upper base b2 on cut B2 and
height h adds an edge B1 -> B2 of weight b1/h and an edge B2 -> B1 of weight
b2/h.  The potential is 1 at the top base, 0 at the bottom base and balanced
at every other vertex.
"""

from __future__ import annotations

import heapq
from bisect import bisect_right
from collections import deque
from dataclasses import dataclass, field

from .errors import SingularSystem
from .field import QuadraticNumber
from .geometry.tiling import Tiling
from .geometry.verify import verify_exact


def _exact_sorted(values, key, approx):
    # float pre-sort makes the exact sort nearly linear
    values = sorted(values, key=approx)
    values.sort(key=key)
    return values


@dataclass(frozen=True)
class Cut:
    y: QuadraticNumber
    x_lo: QuadraticNumber
    x_hi: QuadraticNumber

    @property
    def midpoint(self):
        return ((self.x_lo + self.x_hi) / 2, self.y)

    @property
    def length(self):
        return self.x_hi - self.x_lo


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    weight: QuadraticNumber
    tile: int


@dataclass
class Circuit:
    cuts: list[Cut]
    edges: list[Edge]
    N: int
    P: int
    # per placement: (lower cut, upper cut)
    tile_cuts: list[tuple[int, int]] = field(default_factory=list)

    @property
    def vertices(self):
        return [c.midpoint for c in self.cuts]

    def out_edges(self) -> list[list[Edge]]:
        out: list[list[Edge]] = [[] for _ in self.cuts]
        for e in self.edges:
            out[e.src].append(e)
        return out

    def to_json(self, potential: dict[int, QuadraticNumber] | None = None) -> dict:
        verts = []
        for i, c in enumerate(self.cuts):
            mx, my = c.midpoint
            item = {"id": i, "x": str(mx), "y": str(my), "cut": [str(c.x_lo), str(c.x_hi)]}
            if potential is not None:
                item["potential"] = str(potential[i])
            verts.append(item)
        return {
            "N": self.N,
            "P": self.P,
            "vertices": verts,
            "edges": [
                {"from": e.src, "to": e.dst, "weight": str(e.weight), "tile": e.tile} for e in self.edges
            ],
        }

    def to_dot(self, potential: dict[int, QuadraticNumber] | None = None) -> str:
        lines = ["digraph circuit {", "  rankdir=BT;"]
        for i, c in enumerate(self.cuts):
            name = "N" if i == self.N else "P" if i == self.P else f"R{i}"
            label = name if potential is None else f"{name}\\nw={potential[i]}"
            lines.append(f'  v{i} [label="{label}"];')
        for e in self.edges:
            lines.append(f'  v{e.src} -> v{e.dst} [label="{e.weight}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def extract_cuts(tiling: Tiling, vertices: list | None = None) -> list[Cut]:
    """Maximal horizontal segments of the union of all piece bases, bottom-up."""
    if vertices is None:
        vertices = list(tiling.iter_vertices())
    by_level: dict = {}
    for verts in vertices:
        for lo, hi in ((verts[0], verts[1]), (verts[3], verts[2])):
            y = lo[1]
            by_level.setdefault(y.parts, (y, []))[1].append((lo[0], hi[0]))
    cuts = []
    for y, spans in by_level.values():
        spans = _exact_sorted(spans, lambda s: s[0], lambda s: float(s[0]))
        cur_lo, cur_hi = spans[0]
        for lo, hi in spans[1:]:
            if lo <= cur_hi:
                if hi > cur_hi:
                    cur_hi = hi
            else:
                cuts.append(Cut(y, cur_lo, cur_hi))
                cur_lo, cur_hi = lo, hi
        cuts.append(Cut(y, cur_lo, cur_hi))
    return _exact_sorted(cuts, lambda c: (c.y, c.x_lo), lambda c: (float(c.y), float(c.x_lo)))


def build_circuit(tiling: Tiling) -> Circuit:
    vertices = list(tiling.iter_vertices())
    cuts = extract_cuts(tiling, vertices)
    level_index: dict = {}
    for i, c in enumerate(cuts):
        ids, starts = level_index.setdefault(c.y.parts, ([], []))
        ids.append(i)
        starts.append(c.x_lo)

    def locate(y, x) -> int:
        ids, starts = level_index[y.parts]
        if len(ids) == 1:
            return ids[0]
        return ids[bisect_right(starts, x) - 1]

    edges: list[Edge] = []
    tile_cuts = []
    for k, verts in enumerate(vertices):
        (x0, y0), (x1, _), (x2, y2), (x3, _) = verts
        height = y2 - y0
        lower = locate(y0, x0)
        upper = locate(y2, x3)
        edges.append(Edge(lower, upper, (x1 - x0) / height, k))
        edges.append(Edge(upper, lower, (x2 - x3) / height, k))
        tile_cuts.append((lower, upper))

    t0, t1, t2, t3 = tiling.target.vertices()
    P = locate(t0[1], t0[0])
    N = locate(t3[1], t3[0])
    return Circuit(cuts, edges, N, P, tile_cuts)


def check_reachability(circuit: Circuit) -> bool:
    """Every vertex has directed paths to both N and P."""
    incoming: list[list[int]] = [[] for _ in circuit.cuts]
    for e in circuit.edges:
        incoming[e.dst].append(e.src)
    for sink in (circuit.N, circuit.P):
        seen = {sink}
        queue = deque([sink])
        while queue:
            v = queue.popleft()
            for u in incoming[v]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        if len(seen) != len(circuit.cuts):
            return False
    return all(e.weight > 0 for e in circuit.edges)


def kirchhoff_system(circuit: Circuit):
    """Rows ``({var: coeff}, rhs)`` for the unknown potentials, N and P substituted."""
    fixed = {circuit.N: 1, circuit.P: 0}
    rows: dict[int, list] = {}
    for e in circuit.edges:
        if e.src in fixed:
            continue
        row = rows.setdefault(e.src, [{}, 0])
        coeffs = row[0]
        coeffs[e.src] = coeffs.get(e.src, 0) + e.weight
        if e.dst in fixed:
            row[1] = row[1] + e.weight * fixed[e.dst]
        else:
            coeffs[e.dst] = coeffs.get(e.dst, 0) - e.weight
    return [(v, rows[v][0], rows[v][1]) for v in sorted(rows)]


def solve_sparse(rows: list[tuple[dict, object]], variables: list[int]) -> dict[int, object]:
    """Exact sparse Gaussian elimination.

    The next variable eliminated is the one in the fewest active rows, pivoting
    on its shortest row, which keeps fill-in small on circuit graphs.
    """
    rows = [(dict(c), r) for c, r in rows]
    col_rows: dict[int, set[int]] = {v: set() for v in variables}
    for i, (coeffs, _) in enumerate(rows):
        for v, c in list(coeffs.items()):
            if not c:
                del coeffs[v]
                continue
            if v not in col_rows:
                raise SingularSystem(f"unknown variable {v}")
            col_rows[v].add(i)
    heap = [(len(col_rows[v]), v) for v in variables]
    heapq.heapify(heap)
    done: set[int] = set()
    order: list[tuple[int, int]] = []
    while heap:
        size, v = heapq.heappop(heap)
        if v in done:
            continue
        if size != len(col_rows[v]):
            heapq.heappush(heap, (len(col_rows[v]), v))
            continue
        candidates = col_rows[v]
        if not candidates:
            raise SingularSystem(f"no equation determines variable {v}")
        piv = min(candidates, key=lambda i: (len(rows[i][0]), i))
        pcoeffs, prhs = rows[piv]
        pval = pcoeffs[v]
        for u in pcoeffs:
            col_rows[u].discard(piv)
        for i in sorted(candidates):
            coeffs, rhs = rows[i]
            factor = coeffs[v] / pval
            for u, c in pcoeffs.items():
                new = coeffs.get(u, 0) - factor * c
                if new:
                    if u not in coeffs:
                        col_rows[u].add(i)
                    coeffs[u] = new
                elif u in coeffs:
                    del coeffs[u]
                    col_rows[u].discard(i)
            rows[i] = (coeffs, rhs - factor * prhs)
        for u in pcoeffs:
            if u != v and u not in done:
                heapq.heappush(heap, (len(col_rows[u]), u))
        done.add(v)
        order.append((v, piv))
    values: dict[int, object] = {}
    for v, piv in reversed(order):
        coeffs, rhs = rows[piv]
        acc = rhs
        for u, c in coeffs.items():
            if u != v:
                acc = acc - c * values[u]
        values[v] = acc / coeffs[v]
    return values


def solve_potential(circuit: Circuit) -> dict[int, QuadraticNumber]:
    """The unique potential, by exact elimination over the weights' field."""
    one = circuit.edges[0].weight * 0 + 1 if circuit.edges else 1
    system = kirchhoff_system(circuit)
    unknowns = [v for v in range(len(circuit.cuts)) if v not in (circuit.N, circuit.P)]
    solved = solve_sparse([(c, r) for _, c, r in system], unknowns)
    potential = {circuit.N: one, circuit.P: one - 1}
    potential.update(solved)
    return potential


def kirchhoff_residues(circuit: Circuit, potential: dict[int, QuadraticNumber]) -> dict[int, QuadraticNumber]:
    res: dict[int, QuadraticNumber] = {}
    for e in circuit.edges:
        if e.src in (circuit.N, circuit.P):
            continue
        res[e.src] = res.get(e.src, 0) + e.weight * (potential[e.src] - potential[e.dst])
    return res


@dataclass
class KenyonReport:
    checks: dict[str, bool]
    field: str
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"ok": self.ok, "field": self.field, "checks": self.checks, "details": self.details}


def verify_kenyon(tiling: Tiling, circuit: Circuit | None = None,
                  potential: dict[int, QuadraticNumber] | None = None) -> KenyonReport:
    """Check the circuit consequences on a unit-height tiling.

    1. the solved potential at every vertex is that vertex's height;
    2. every piece height is a potential difference across its two cuts;
    3. target bases lie in the field of the prototile base/height ratios.
    """
    circuit = circuit or build_circuit(tiling)
    potential = potential or solve_potential(circuit)
    details = []
    heights_ok = True
    for i, cut in enumerate(circuit.cuts):
        if potential[i] != cut.y:
            heights_ok = False
            details.append(f"vertex {i}: potential {potential[i]} != height {cut.y}")
    diffs_ok = True
    for k, (lo, hi) in enumerate(circuit.tile_cuts):
        if tiling.placements[k].scale != potential[hi] - potential[lo]:
            diffs_ok = False
            details.append(f"piece {k}: height != w({hi}) - w({lo})")
    rational = all(f.param.is_rational() for f in tiling.prototiles)
    name = "Q" if rational or tiling.ctx is None else f"Q[sqrt({tiling.ctx.d})]"
    target = tiling.target
    if rational:
        field_ok = target.bottom.is_rational() and target.top.is_rational()
        field_ok = field_ok and all(v.is_rational() for v in potential.values())
        if not field_ok:
            details.append("rational prototiles but irrational target bases or potentials")
    else:
        field_ok = True
    return KenyonReport(
        {"potential_is_height": heights_ok, "heights_are_differences": diffs_ok, "target_in_field": field_ok},
        name,
        details,
    )


def circuit_of_verified(tiling: Tiling) -> Circuit:
    report = verify_exact(tiling)
    if not report.ok:
        raise ValueError(f"tiling does not verify: {report.reason}")
    return build_circuit(tiling)
