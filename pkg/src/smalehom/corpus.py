"""Seeded corpora of graphs and graph homomorphisms used by checks and scripts."""

from __future__ import annotations

import os
import random
from collections import Counter
from dataclasses import dataclass

from .graphs import Graph, GraphHom, fold_hom, random_graph, recoding_hom

DEFAULT_SEED = 20240


def resolve_seed(seed: int | None = None) -> int:
    """``SMALE_SEED`` from the environment wins over the argument."""
    env = os.environ.get("SMALE_SEED")
    if env is not None:
        return int(env)
    return DEFAULT_SEED if seed is None else seed


@dataclass(frozen=True)
class CorpusConfig:
    seed: int = DEFAULT_SEED
    count: int = 50
    max_vertices: int = 5
    max_edges: int = 10
    # recodings with large fibers make the unreduced complex explode
    max_recoding_fiber: int = 3


def random_graphs(cfg: CorpusConfig = CorpusConfig()) -> list[Graph]:
    rng = random.Random(cfg.seed)
    return [random_graph(rng, cfg.max_vertices, cfg.max_edges) for _ in range(cfg.count)]


def max_fiber(pi: GraphHom) -> int:
    return max(Counter(pi.vmap).values(), default=0)


def hom_corpus(cfg: CorpusConfig = CorpusConfig()) -> list[tuple[str, GraphHom]]:
    """Identity, two-sheet fold and block recoding over every corpus graph.

    Recodings whose largest vertex fiber exceeds ``cfg.max_recoding_fiber``
    are left out.
    """
    out = []
    for k, G in enumerate(random_graphs(cfg)):
        out.append((f"identity[{k}]", GraphHom.identity(G)))
        out.append((f"fold[{k}]", fold_hom(G)))
        rec = recoding_hom(G)
        if max_fiber(rec) <= cfg.max_recoding_fiber:
            out.append((f"recoding[{k}]", rec))
    return out
