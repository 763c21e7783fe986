"""Small named causal graphs used throughout the tests and docs (0-based)."""

from .causal_model import CausalGraph

PENTAGON = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]


def one_way_chain() -> CausalGraph:
    """D1 -> D2 -> D3."""
    return CausalGraph.from_arrows(3, [(0, 1), (1, 2)])


def bidirected_square_path() -> CausalGraph:
    """D1 <-> D2 <-> D4 <-> D3."""
    return CausalGraph.from_arrows(4, [], bidirected=[(0, 1), (1, 3), (2, 3)])


def two_out() -> CausalGraph:
    """D2 -> D3 and D2 -> D1."""
    return CausalGraph.from_arrows(3, [(1, 2), (1, 0)])


def one_way_square() -> CausalGraph:
    """D2 -> D3, D2 -> D1, D3 -> D4."""
    return CausalGraph.from_arrows(4, [(1, 2), (1, 0), (2, 3)])


def bidirected_pentagon() -> CausalGraph:
    return CausalGraph.from_arrows(5, [], bidirected=PENTAGON)


def bidirected_claw() -> CausalGraph:
    """D1 bidirected to each of D2, D3, D4."""
    return CausalGraph.from_arrows(4, [], bidirected=[(0, 1), (0, 2), (0, 3)])


def hexagon_with_diameter() -> CausalGraph:
    hexagon = [(k, (k + 1) % 6) for k in range(6)]
    return CausalGraph.from_arrows(6, [], bidirected=hexagon + [(0, 3)])


def pentagon_with_one_way_chord() -> CausalGraph:
    """Bidirected pentagon plus the single one-way chord D4 -> D1."""
    return CausalGraph.from_arrows(5, [(3, 0)], bidirected=PENTAGON)


def pentagon_with_bidirected_chord() -> CausalGraph:
    return CausalGraph.from_arrows(5, [], bidirected=PENTAGON + [(3, 0)])


def complete_bidirected(n: int) -> CausalGraph:
    return CausalGraph(n, (3,) * (n * (n - 1) // 2))
