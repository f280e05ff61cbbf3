import numpy as np
import pytest

from makeuplab import synthetic


@pytest.fixture(scope="session")
def fixture_pair():
    return synthetic.make_fixture_pair(224, 224, seed=0)


@pytest.fixture(scope="session")
def small_face():
    """64x64 face fixture for solver-oracle tests."""
    return synthetic.make_fixture(64, 64, "plain", seed=3)


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture(scope="session")
def fixture_files(fixture_pair, tmp_path_factory):
    base = tmp_path_factory.mktemp("fixtures")
    inp, ref = fixture_pair
    paths_in = synthetic.write_fixture(base, "input", inp)
    paths_ref = synthetic.write_fixture(base, "reference", ref)
    return {"input": paths_in, "reference": paths_ref, "dir": base}


def pipeline_doc(fixture_files, out_path, **overrides):
    doc = {
        "input": str(fixture_files["input"]["image"]),
        "input_landmarks": str(fixture_files["input"]["landmarks"]),
        "input_labels": str(fixture_files["input"]["labels"]),
        "reference": str(fixture_files["reference"]["image"]),
        "reference_landmarks": str(fixture_files["reference"]["landmarks"]),
        "reference_labels": str(fixture_files["reference"]["labels"]),
        "out": str(out_path),
    }
    doc.update(overrides)
    return doc
