#!/usr/bin/env python3
"""Regenerate the frozen golden output for the bundled fixture pair.

Run only after the per-pixel oracles in the test suite validate the
pipeline; the committed golden then pins future behavior.
"""

import sys
import tempfile
from pathlib import Path

from makeuplab import pipeline, synthetic

REPO = Path(__file__).resolve().parent.parent
GOLDEN = REPO / "tests" / "data" / "golden.png"


def main():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        inp, ref = synthetic.make_fixture_pair(224, 224, seed=0)
        p_in = synthetic.write_fixture(tmp, "input", inp)
        p_ref = synthetic.write_fixture(tmp, "reference", ref)
        GOLDEN.parent.mkdir(parents=True, exist_ok=True)
        doc = {
            "input": str(p_in["image"]),
            "input_landmarks": str(p_in["landmarks"]),
            "input_labels": str(p_in["labels"]),
            "reference": str(p_ref["image"]),
            "reference_landmarks": str(p_ref["landmarks"]),
            "reference_labels": str(p_ref["labels"]),
            "out": str(GOLDEN),
            "alpha": 0.95,
            "beta": 30.0,
        }
        report = pipeline.run_pipeline(pipeline.config_from_dict(doc))
        print(f"wrote {GOLDEN} in {report.total_seconds:.2f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
