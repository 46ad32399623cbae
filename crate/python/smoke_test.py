"""Smoke test for the `lincode` Python module.

Build the module first:

    cargo build --release -p lincode-python --features extension-module

Then run `python3 python/smoke_test.py`. The script imports an installed
`lincode` if there is one and otherwise loads the freshly built library
from `target/release`.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys


def load():
    try:
        import lincode

        return lincode
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for name in ("liblincode.so", "liblincode.dylib", "lincode.dll"):
        path = root / "target" / "release" / name
        if path.exists():
            loader = importlib.machinery.ExtensionFileLoader("lincode", str(path))
            spec = importlib.util.spec_from_loader("lincode", loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("lincode module not found; build it with --features extension-module")


def main():
    lc = load()

    hamming = lc.LinearCode(2, ["1000011", "0100101", "0010110", "0001111"])
    assert (hamming.n, hamming.k, hamming.q) == (7, 4, 2)
    assert hamming.weight_enumerator() == [1, 0, 0, 7, 7, 0, 0, 1]
    assert hamming.min_distance() == 3
    assert hamming.is_projective()
    assert hamming.automorphism_order() == 168
    assert lc.macwilliams(hamming.weight_enumerator(), 2, 4) == [1, 0, 0, 0, 7, 0, 0, 0]

    # the two matrices generate different but isometric codes
    g2 = lc.LinearCode(2, ["1111000", "1110111"])
    g3 = lc.LinearCode(2, ["1011111", "0100111"])
    assert g2 != g3
    assert lc.isometric(g2, g3)
    assert g2.canonical_form() == g3.canonical_form()

    children, complete = lc.extend(lc.LinearCode(2, ["111111"]), 1, [4, 6])
    assert complete and len(children) == 1
    assert lc.isometric(children[0], g3)

    counts, complete = lc.classify_counts(2, 10, 6, d=3)
    assert complete
    assert [counts[(10, k)] for k in range(1, 7)] == [1, 10, 42, 76, 41, 4]

    simplex = lc.LinearCode(2, ["1001101", "0101011", "0010111"])
    assert simplex.minimal_codewords() == 7

    try:
        lc.macwilliams([1, 1], 2, 3)
    except ValueError:
        pass
    else:
        raise AssertionError("inconsistent distribution accepted")

    print("python smoke test ok")


if __name__ == "__main__":
    main()
