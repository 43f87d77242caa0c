"""Print the classification rows and the size of each faithful real representation."""
import argparse

from clifspin.structure import classify, clifford_class_table, faithful_matrix_rep


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=8)
    parser.add_argument("--grid", type=int, default=8, help="print Cl_{p,q} for p, q < GRID")
    args = parser.parse_args()

    for name, row in clifford_class_table(args.n_max).items():
        print(f"{name:10s}", "  ".join(f"{c:>9s}" for c in row))
    print()
    print("Cl_{p,q} (rows p, columns q)")
    print("     " + "".join(f"{q:>12d}" for q in range(args.grid)))
    for p in range(args.grid):
        print(f"{p:>4d} " + "".join(f"{str(classify(p, q)):>12s}" for q in range(args.grid)))
    print()
    print("real matrix size of the faithful representation, p+q <= 8")
    for n in range(9):
        sizes = [faithful_matrix_rep(p, n - p).size for p in range(n + 1)]
        print(f"n={n}: " + " ".join(str(s) for s in sizes))


if __name__ == "__main__":
    main()
