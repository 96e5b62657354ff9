#!/usr/bin/env python3
"""Regenerate the golden MINI material snapshots used by the test suite.

Run after an intentional renderer change:

    python3 tools/make_golden.py
"""

from __future__ import annotations

import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from lingua.fixtures import mini  # noqa: E402
from lingua.masking import build_lexicon, pseudoword_scheme  # noqa: E402
from lingua.materials import emit_all  # noqa: E402


def main() -> None:
    golden = ROOT / "tests" / "golden"
    golden.mkdir(parents=True, exist_ok=True)
    corpus = mini()
    lexicon = build_lexicon(corpus, pseudoword_scheme(seed=2024))
    with tempfile.TemporaryDirectory() as tmp:
        emit_all(corpus, lexicon, tmp, seed=2024)
        for name in ("sheets/p1.svg", "overlay/p1.svg", "dictionary.csv", "manifest.json"):
            source = Path(tmp) / name
            target = golden / name.replace("/", "_")
            target.write_bytes(source.read_bytes())
            print(f"wrote {target}")


if __name__ == "__main__":
    main()
