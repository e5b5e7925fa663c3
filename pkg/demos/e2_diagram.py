"""Print the factorisation T′(x²) → K(x) over F_2[x,y]/(xy) found by search."""
from tatekoszul.fixtures import e2_spec
from tatekoszul.tate import phi_construct


def main():
    for mode in ("search", "paper_bound"):
        w = phi_construct(e2_spec(), 1, mode)
        print(f"{mode}: u = {w.u}, t = {w.tate.t}")
        for n in sorted(w.phi.comps):
            print(f"  phi_{n} = {w.phi.comp(n).row_strings()}")
        print(f"  checks: {w.verify()}")


if __name__ == "__main__":
    main()
