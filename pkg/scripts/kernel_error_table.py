#!/usr/bin/env python3
"""Sup-error of the kernel polynomial on [0.1, 0.9] as the degree grows."""

from finitetop.approx import named_function, weierstrass_polynomial

GRID = [0.1 + i * 0.8 / 32 for i in range(33)]


def main():
    print("n     abs-half    sin-scaled  square")
    for n in (1, 2, 4, 8, 16, 32, 64):
        errs = []
        for name in ("abs-half", "sin-scaled", "square"):
            f = named_function(name)
            ev = weierstrass_polynomial(f, n)
            errs.append(max(abs(ev(x) - f(x)) for x in GRID))
        print(f"{n:<5} " + "  ".join(f"{e:.8f}" for e in errs))


if __name__ == "__main__":
    main()
