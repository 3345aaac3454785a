"""Compare the numba and numpy evolution kernels on the same workloads.

    python benchmarks/bench_backends.py [--lengths 1000,10000,100000] [--key 8] [--csv out.csv]

Each backend runs a full encrypt+decrypt length sweep; JIT compilation is
triggered before timing.
"""
import argparse
import csv
import sys

from scytale import bench, kernels


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--lengths", default="1000,10000,100000")
    parser.add_argument("--key", type=int, default=8)
    parser.add_argument("--repetitions", type=int, default=5)
    parser.add_argument("--csv", help="write backend,string_length,iterations,runtime_seconds")
    args = parser.parse_args(argv)
    lengths = [int(v) for v in args.lengths.split(",")]

    results = bench.compare_backends(lengths, args.key, args.repetitions)
    names = list(results)
    print(f"{'length':>8}  " + "  ".join(f"{n:>12}" for n in names) + ("  speedup" if len(names) > 1 else ""))
    for i, length in enumerate(lengths):
        times = [results[n][i].runtime for n in names]
        line = f"{length:>8}  " + "  ".join(f"{t:>11.6f}s" for t in times)
        if len(names) > 1:
            line += f"  {times[1] / times[0]:>6.2f}x"
        print(line)

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["backend", "string_length", "iterations", "runtime_seconds"])
            for name, recs in results.items():
                for r in recs:
                    writer.writerow([name, r.string_length, r.iterations, f"{r.runtime:.9f}"])
    if "numba" not in kernels.BACKENDS:
        print("numba unavailable; only the numpy path was measured", file=sys.stderr)


if __name__ == "__main__":
    main()
