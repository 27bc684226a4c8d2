#!/usr/bin/env python3
"""Regenerate the bundled newform snapshot with PARI/GP (via cypari2).

Writes data/newforms/level_<N>.json in the cache format read by the
newform store: weight 2, trivial character, one record per Galois orbit,
coefficients a_1..a_<num_an> as exact rationals in the power basis of the
Hecke field polynomial (lowest degree first).

Orbit labels follow the LMFDB convention: orbits are ordered by dimension
and then by the sequence of traces Tr(a_n), and lettered a, b, ..., z, ba, ...

    pip install cypari2
    python3 scripts/generate_newform_snapshot.py 32 544 2336 2848 3616
"""

import argparse
import json
import pathlib

import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9, silent=True)

CM_CANDIDATES = [-3, -4, -7, -8, -11, -19, -43, -67, -163]


def orbit_letters(index):
    letters = ""
    while True:
        letters = chr(ord("a") + index % 26) + letters
        index //= 26
        if index == 0:
            return letters


def rational_pair(value):
    value = pari(value)
    return [int(pari.numerator(value)), int(pari.denominator(value))]


def power_basis_coords(coef, degree):
    lifted = pari.lift(coef)
    return [rational_pair(pari.polcoef(lifted, k, "y")) for k in range(degree)]


def detect_cm(level, an):
    primes = [int(p) for p in pari.primes(pari.primepi(len(an)))]
    for disc in CM_CANDIDATES:
        inert = [p for p in primes if level % p and pari.kronecker(disc, p) == -1]
        if inert and all(all(c[0] == 0 for c in an[p - 1]) for p in inert):
            return disc
    return None


def level_forms(level, num_an):
    pari(f"mf = mfinit([{level}, 2], 0); L = mfeigenbasis(mf); F = mffields(mf)")
    count = int(pari("#L"))
    forms = []
    for k in range(1, count + 1):
        poly = pari(f"F[{k}]")
        degree = int(pari.poldegree(poly))
        coefs = pari(f"mfcoefs(L[{k}], {num_an})")
        an = [power_basis_coords(coefs[n], degree) for n in range(1, num_an + 1)]
        traces = [int(pari(f"trace(Mod(lift({coefs[n]}), F[{k}]))")) for n in range(1, num_an + 1)]
        field_poly = [int(pari.polcoef(poly, j, "y")) for j in range(degree + 1)]
        forms.append({
            "sort_key": (degree, traces),
            "dimension": degree,
            "field_poly": field_poly,
            "an": an,
            "cm_discriminant": detect_cm(level, an),
        })
    forms.sort(key=lambda f: f["sort_key"])
    out = []
    for index, form in enumerate(forms):
        out.append({
            "label": f"{level}.2.a.{orbit_letters(index)}",
            "dimension": form["dimension"],
            "field_poly": form["field_poly"],
            "an": form["an"],
            "cm_discriminant": form["cm_discriminant"],
        })
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("levels", type=int, nargs="+")
    parser.add_argument("--num-an", type=int, default=600)
    parser.add_argument("--out-dir", default=pathlib.Path(__file__).resolve().parent.parent / "data" / "newforms")
    args = parser.parse_args()
    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for level in args.levels:
        doc = {"level": level, "weight": 2, "forms": level_forms(level, args.num_an)}
        path = out_dir / f"level_{level}.json"
        path.write_text(json.dumps(doc, separators=(",", ":")) + "\n", encoding="utf-8")
        print(f"level {level}: {len(doc['forms'])} orbits -> {path}")


if __name__ == "__main__":
    main()
