from typing import Optional

import numpy as np


def make_rng(seed: Optional[int]) -> np.random.Generator:
    """
    Получить генератор случайных чисел
    :param seed: зерно; одно и то же зерно дает одну и ту же последовательность
    :return: numpy Generator
    """
    return np.random.default_rng(seed)


def spawn_seed(rng: np.random.Generator) -> int:
    """Получить дочернее зерно из генератора"""
    return int(rng.integers(0, 2**63 - 1))
