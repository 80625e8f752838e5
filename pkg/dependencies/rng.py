from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List

import numpy as np

from config import SIM_BLOCK_SIZE, SIM_WORKERS


def block_generator(seed: int, block: int) -> np.random.Generator:
    """
    Provide the PCG64 generator for one block of replicas.

    Every block gets its own substream derived from (seed, block index), so a
    block's draws never depend on which thread runs it or in what order.

    Args:
        seed (int): Run seed (any non-negative integer up to 64 bits).
        block (int): Block index, starting at 0.

    Returns:
        np.random.Generator: Independent, reproducible generator.
    """
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(block,))
    return np.random.Generator(np.random.PCG64(sequence))


def seeded_generator(seed: int, *key: int) -> np.random.Generator:
    """Generator for one-shot draws keyed by extra integers (e.g. the dimension n)."""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=tuple(key))
    return np.random.Generator(np.random.PCG64(sequence))


def run_blocks(
    replicas: int,
    seed: int,
    draw: Callable[[np.random.Generator, int], np.ndarray],
    block_size: int = None,
    workers: int = None,
) -> np.ndarray:
    """
    Run `draw(generator, size)` over consecutive replica blocks and concatenate.

    Blocks are evaluated on a thread pool of CUTOFF_SIM_WORKERS threads; results
    are assembled in block order, so the output is identical for any worker count.

    Args:
        replicas (int): Total number of replicas (>= 1).
        seed (int): Run seed.
        draw (Callable): Produces one sample per replica for a block.
        block_size (int, optional): Replicas per block; defaults to CUTOFF_SIM_BLOCK_SIZE.
        workers (int, optional): Thread count; defaults to CUTOFF_SIM_WORKERS.

    Returns:
        np.ndarray: Samples indexed by replica.
    """
    block_size = block_size or SIM_BLOCK_SIZE
    workers = workers or SIM_WORKERS
    sizes: List[int] = []
    remaining = replicas
    while remaining > 0:
        sizes.append(min(block_size, remaining))
        remaining -= sizes[-1]

    def _run(block: int) -> np.ndarray:
        return draw(block_generator(seed, block), sizes[block])

    if workers <= 1:
        parts = [_run(block) for block in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run, range(len(sizes))))
    return np.concatenate(parts)
