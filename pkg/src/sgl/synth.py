"""Seeded synthetic datasets used by the CLI and the acceptance suite."""

import numpy as np

from .errors import ConfigError


def make_blobs(n=90, centers=3, sep=5.0, sigma=0.1, seed=0):
    """Gaussian blobs whose centers sit on a circle with pairwise distance sep."""
    if n < centers or centers < 1:
        raise ConfigError(f"need n >= centers >= 1, got n={n}, centers={centers}")
    rng = np.random.default_rng(seed)
    if centers == 1:
        cxy = np.zeros((1, 2))
    else:
        radius = sep / (2.0 * np.sin(np.pi / centers))
        angles = 2.0 * np.pi * np.arange(centers) / centers
        cxy = radius * np.column_stack([np.cos(angles), np.sin(angles)])
    counts = np.full(centers, n // centers)
    counts[: n % centers] += 1
    y = np.repeat(np.arange(1, centers + 1), counts)
    X = cxy[y - 1] + rng.normal(0.0, sigma, size=(n, 2))
    return X, y


def make_rings(n=200, radii=(1.0, 3.0), noise=0.05, seed=0):
    """Concentric rings: evenly spaced angles with jitter, radial noise."""
    if n < len(radii):
        raise ConfigError(f"need n >= {len(radii)} samples")
    rng = np.random.default_rng(seed)
    counts = np.full(len(radii), n // len(radii))
    counts[: n % len(radii)] += 1
    xs, ys = [], []
    for cls, (r, m) in enumerate(zip(radii, counts), start=1):
        spacing = 2.0 * np.pi / m
        theta = spacing * np.arange(m) + rng.normal(0.0, 0.2 * spacing, m)
        rad = r + rng.normal(0.0, noise, m)
        xs.append(np.column_stack([rad * np.cos(theta), rad * np.sin(theta)]))
        ys.append(np.full(m, cls))
    return np.vstack(xs), np.concatenate(ys)


def make_moons(n=150, noise=0.05, seed=0):
    """Two interleaving half circles."""
    if n < 2:
        raise ConfigError(f"need n >= 2 samples, got {n}")
    rng = np.random.default_rng(seed)
    n1 = n // 2 + n % 2
    n2 = n - n1
    t1 = np.linspace(0.0, np.pi, n1)
    t2 = np.linspace(0.0, np.pi, max(n2, 1))
    outer = np.column_stack([np.cos(t1), np.sin(t1)])
    inner = np.column_stack([1.0 - np.cos(t2), 0.5 - np.sin(t2)])[:n2]
    X = np.vstack([outer, inner]) + rng.normal(0.0, noise, size=(n, 2))
    y = np.concatenate([np.full(n1, 1), np.full(n2, 2)])
    return X, y


GENERATORS = {"blobs": make_blobs, "rings": make_rings, "moons": make_moons}


def make_dataset(kind, n, seed, **kwargs):
    """Dispatch on the generator name; returns (X, labels)."""
    if kind not in GENERATORS:
        raise ConfigError(f"unknown synthetic kind {kind!r}; choose from {sorted(GENERATORS)}")
    return GENERATORS[kind](n=n, seed=seed, **kwargs)
