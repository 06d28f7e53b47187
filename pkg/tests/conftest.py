import numpy as np
import pytest

from spherepack.geometry import Configuration, Container, random_configuration

# Margin below which a deformation term counts as sitting on a kink of the
# energy surface. Finite differences at h=1e-7 must stay on one smooth piece.
KINK_MARGIN = 1e-4


def term_margins(config, container):
    """Distance of every wall/pair term from its kink, as one flat array."""
    centers = config.centers
    r = config.radius
    out = []
    if container.kind == "sphere":
        norms = np.sqrt((centers ** 2).sum(axis=1))
        out.append(np.abs(norms + r - container.r0))
    else:
        out.append(np.abs(np.abs(centers) + r - container.r0).ravel())
    n = config.n
    for i in range(n):
        for j in range(i + 1, n):
            dist = np.linalg.norm(centers[i] - centers[j])
            out.append(np.array([abs(2 * r - dist), dist]))
    return np.concatenate(out)


def nondegenerate_config(n, kind, seed, r0=1.0, radius=0.5):
    """Random configuration with every energy term strictly off its kink.

    Rejection-samples fresh seeds until no wall or pair measure lies within
    KINK_MARGIN of switching on or off, so small coordinate perturbations
    keep the active-term set fixed.
    """
    container = Container(kind, r0)
    for attempt in range(200):
        config = random_configuration(n, container, radius, seed + 100000 * attempt)
        if term_margins(config, container).min() > KINK_MARGIN:
            return config, container
    raise AssertionError("could not sample a nondegenerate configuration")


def random_rotation(seed):
    rng = np.random.Generator(np.random.Philox(seed))
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q *= np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


@pytest.fixture
def tmp_packing_path(tmp_path):
    return tmp_path / "packing.txt"
