"""Regenerate src/qcb/data/table1.json from the transcribed table text.

Each cell is stored both as the transcribed text and as an unnormalized
NCPoly in the T-alphabet, with the factor order exactly as printed.
"""
import json
from pathlib import Path

from qcb.exprio import parse_expr, poly_to_dict
from qcb.ncpoly import algebra

CELLS = {
    (2, 0, 1): "1",
    (2, 0, 2): "1",
    (2, 1, 1): "T[1,1]^2 + q^2*T[2,2]^2 + T[1,2]*Tstar[1,2]",
    (2, 1, 2): "q^2*T[1,1]^2 + T[2,2]^2 + Tstar[1,2]*T[1,2]",
    (2, 2, 1): "q^2*T[1,1]^2*T[2,2]^2",
    (2, 2, 2): "q^2*T[1,1]^2*T[2,2]^2",
    (3, 0, 1): "1",
    (3, 0, 2): "1",
    (3, 1, 1): "T[1,1]^2 + q^2*T[2,2]^2 + q^4*T[3,3]^2 + T[1,2]*Tstar[1,2]"
               " + T[1,3]*Tstar[1,3] + q^2*T[2,3]*Tstar[2,3]",
    (3, 1, 2): "q^4*T[1,1]^2 + q^2*T[2,2]^2 + T[3,3]^2 + q^2*Tstar[1,2]*T[1,2]"
               " + Tstar[1,3]*T[1,3] + Tstar[2,3]*T[2,3]",
    (3, 2, 1): "q^2*T[1,1]^2*T[2,2]^2 + q^4*T[1,1]^2*T[3,3]^2 + q^6*T[2,2]^2*T[3,3]^2"
               " + q^2*T[2,3]*T[1,1]^2*Tstar[2,3] + q^2*T[1,3]*T[2,2]^2*Tstar[1,3]"
               " + q^4*T[1,2]*T[3,3]^2*Tstar[1,2] + q^2*T[1,2]*T[2,3]*Tstar[1,2]*Tstar[2,3]"
               " - q*T[1,2]*T[2,3]*T[2,2]*Tstar[1,3] - q^3*T[1,3]*T[2,2]*Tstar[1,2]*Tstar[2,3]",
    (3, 2, 2): "q^6*T[1,1]^2*T[2,2]^2 + q^4*T[1,1]^2*T[3,3]^2 + q^2*T[2,2]^2*T[3,3]^2"
               " + q^4*Tstar[2,3]*T[1,1]^2*T[2,3] + q^2*Tstar[1,3]*T[2,2]^2*T[1,3]"
               " + q^2*Tstar[1,2]*T[3,3]^2*T[1,2] + q^2*Tstar[1,2]*Tstar[2,3]*T[1,2]*T[2,3]"
               " - q*Tstar[1,3]*T[2,2]*T[1,2]*T[2,3] - q^3*Tstar[1,2]*Tstar[2,3]*T[2,2]*T[1,3]",
    (3, 3, 1): "q^6*T[1,1]^2*T[2,2]^2*T[3,3]^2",
    (3, 3, 2): "q^6*T[1,1]^2*T[2,2]^2*T[3,3]^2",
}


def main():
    cells = []
    for (n, i, col), text in CELLS.items():
        p = parse_expr(text, algebra(n, "tquot"), normalize=False)
        cells.append({"n": n, "i": i, "column": col, "text": text, "poly": poly_to_dict(p)})
    out = Path(__file__).resolve().parents[1] / "src" / "qcb" / "data" / "table1.json"
    out.write_text(json.dumps({"cells": cells}, indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(cells)} cells to {out}")


if __name__ == "__main__":
    main()
