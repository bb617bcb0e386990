"""Hardcoded adjacency for the platonic solids and the Petersen graph."""
from hyperwalk.exceptions import ParameterRangeError
from hyperwalk.graph.core import FiniteGraph

PLATONIC_ORDERS = (4, 6, 8, 12, 20)

# Antipodal pairs of the octahedron are the non-edges
_OCTAHEDRON_ANTIPODES = {(0, 1), (2, 3), (4, 5)}

_ICOSAHEDRON = {
    0: [1, 5, 7, 8, 11],
    1: [2, 5, 6, 8],
    2: [3, 6, 8, 9],
    3: [4, 6, 9, 10],
    4: [5, 6, 10, 11],
    5: [6, 11],
    7: [8, 9, 10, 11],
    8: [9],
    9: [10],
    10: [11],
}

_DODECAHEDRON_LCF = ([10, 7, 4, -4, -7, 10, -4, 7, -7, 4], 2)


def lcf_graph(n: int, shifts: list[int], repeats: int, name: str = "") -> FiniteGraph:
    """Hamiltonian cycle 0..n-1 plus chords given in LCF notation."""
    edges = {tuple(sorted((i, (i + 1) % n))) for i in range(n)}
    for step in range(repeats * len(shifts)):
        v = step % n
        w = (v + shifts[step % len(shifts)]) % n
        edges.add(tuple(sorted((v, w))))
    return FiniteGraph.from_edges(n, sorted(edges), name=name)


def tetrahedron() -> FiniteGraph:
    return FiniteGraph.from_edges(4, [(a, b) for a in range(4) for b in range(a + 1, 4)], name="platonic:4")


def octahedron() -> FiniteGraph:
    edges = [(a, b) for a in range(6) for b in range(a + 1, 6) if (a, b) not in _OCTAHEDRON_ANTIPODES]
    return FiniteGraph.from_edges(6, edges, name="platonic:6")


def cube() -> FiniteGraph:
    edges = [(v, v ^ (1 << bit)) for v in range(8) for bit in range(3) if v < v ^ (1 << bit)]
    labels = [format(v, "03b") for v in range(8)]
    return FiniteGraph.from_edges(8, edges, labels=labels, name="platonic:8")


def icosahedron() -> FiniteGraph:
    edges = [(v, w) for v, nbrs in _ICOSAHEDRON.items() for w in nbrs]
    return FiniteGraph.from_edges(12, edges, name="platonic:12")


def dodecahedron() -> FiniteGraph:
    shifts, repeats = _DODECAHEDRON_LCF
    return lcf_graph(20, shifts, repeats, name="platonic:20")


def platonic(n: int) -> FiniteGraph:
    builders = {4: tetrahedron, 6: octahedron, 8: cube, 12: icosahedron, 20: dodecahedron}
    if n not in builders:
        raise ParameterRangeError(f"platonic solids have {PLATONIC_ORDERS} vertices, got {n}")
    return builders[n]()


def petersen() -> FiniteGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return FiniteGraph.from_edges(10, outer + spokes + inner, name="petersen")
