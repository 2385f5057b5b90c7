"""Reference configurations and a seeded corpus of random ones."""

from __future__ import annotations

import random

from .configuration import ConfigurationError, VectorConfiguration, is_admissible

CFG_A = VectorConfiguration.from_vectors([(1,), (-1,)], "CFG-A")
CFG_B = VectorConfiguration.from_vectors([(1, 0), (0, 1), (-1, -1)], "CFG-B")
CFG_C = VectorConfiguration.from_vectors([(1, 0), (0, 1), (0, -1), (-1, 1)], "CFG-C")
CFG_D = VectorConfiguration.from_vectors([(1,), (1,)], "CFG-D")


def reference_configurations() -> dict[str, VectorConfiguration]:
    return {c.name: c for c in (CFG_A, CFG_B, CFG_C, CFG_D)}


def random_configuration(
    rng: random.Random,
    d: int,
    n: int,
    entry_bound: int = 2,
    projective: bool = True,
    name: str = "random",
    max_tries: int = 10_000,
) -> VectorConfiguration:
    """Draw integer vectors until they span Q^d (and positively span, if asked)."""
    for _ in range(max_tries):
        a = [[rng.randint(-entry_bound, entry_bound) for _ in range(d)] for _ in range(n)]
        try:
            cfg = VectorConfiguration.from_vectors(a, name)
        except ConfigurationError:
            continue
        if projective and not is_admissible(cfg, ()):
            continue
        return cfg
    raise RuntimeError(f"no configuration found for d={d}, n={n}")


def random_corpus(
    count: int = 20, seed: int = 0, max_n: int = 6, max_corank: int = 3, max_d: int = 3
) -> list[VectorConfiguration]:
    """``count`` projective configurations with d <= max_d, n <= max_n and n - d <= max_corank."""
    rng = random.Random(seed)
    shapes = [(d, n) for d in range(1, max_d + 1) for n in range(d + 1, max_n + 1) if n - d <= max_corank]
    out = []
    for k in range(count):
        d, n = shapes[k % len(shapes)]
        out.append(random_configuration(rng, d, n, name=f"rand-{seed}-{k}"))
    return out
