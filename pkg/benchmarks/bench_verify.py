import argparse
import time

from k3fib import VerifyOptions
from k3fib.corpus import load_corpus, verify_all
from k3fib.lattice import enumerate_fibration_lattices
from k3fib.model import WeierstrassModel
from k3fib.tate import classify_all


def best_of(repeat, fn):
    timings = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        timings.append(time.perf_counter() - start)
    return min(timings)


def main():
    parser = argparse.ArgumentParser(description="Time catalog verification and the hot paths under it.")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--fast", action="store_true", help="skip heights, discriminant checks and neighbor steps")
    parser.add_argument("--id", type=int, action="append", default=[], help="restrict to these records")
    args = parser.parse_args()

    catalog = load_corpus()
    options = VerifyOptions.fast() if args.fast else VerifyOptions()
    options = options.with_(jobs=args.jobs)
    ids = args.id or None
    model = WeierstrassModel.from_strings("2(t^3 + 1)", "t^6", "0")

    modes = [
        ("classify_all", lambda: classify_all(model)),
        ("enumerate_fibration_lattices", enumerate_fibration_lattices),
        ("verify_all", lambda: verify_all(catalog, options, ids)),
    ]

    print(f"records={len(ids) if ids else len(catalog)}")
    print(f"jobs={args.jobs}")
    print(f"fast={args.fast}")
    print(f"repeat={args.repeat}")

    for name, fn in modes:
        best = best_of(args.repeat, fn)
        print(f"mode={name}")
        print(f"best_elapsed={best:.6f}")

    summary = verify_all(catalog, options, ids)
    print(f"verdict={'PASS' if summary.ok else 'FAIL'}")


if __name__ == "__main__":
    main()
