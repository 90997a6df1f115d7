"""Regenerate the shipped sample inputs under sample_data/."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from semifourier import positivity as pos
from semifourier.jsonio import map_to_json, rep_to_json
from semifourier.harmonic import MatrixMap, NATURAL
from semifourier.semigroup import build_matrix_units, from_builtin, inverse_structure

OUT = Path(__file__).resolve().parent.parent / "sample_data"


def dump(name: str, obj: dict) -> None:
    path = OUT / name
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    print("wrote", path)


def main() -> None:
    OUT.mkdir(exist_ok=True)

    mu2 = inverse_structure(build_matrix_units(2))
    dump("transpose_m2.json", map_to_json(pos.transpose_map(2, mu2), "builtin:matrix_units:2"))
    dump(
        "kraus_m2_seed1.json",
        map_to_json(pos.random_cp_map(2, 2, kraus_count=2, seed=1, structure=mu2),
                    "builtin:matrix_units:2"),
    )

    for ref, seed, fname in [
        ("builtin:symmetric_inverse:2", 0, "random_i2_seed0.json"),
        ("builtin:symmetric_inverse:2", 1, "random_i2_seed1.json"),
        ("builtin:symmetric_inverse:3", 0, "random_i3_seed0.json"),
    ]:
        st = inverse_structure(from_builtin(ref))
        rng = np.random.default_rng([seed, st.table.order])
        vals = rng.standard_normal((st.table.order, 2, 2)) + 1j * rng.standard_normal(
            (st.table.order, 2, 2)
        )
        dump(fname, map_to_json(MatrixMap(st, 2, NATURAL, vals), ref))

    st2 = inverse_structure(from_builtin("builtin:symmetric_inverse:2"))
    dump(
        "gram_i2_seed0.json",
        map_to_json(pos.gram_pd_map(st2, 2, seed=0), "builtin:symmetric_inverse:2"),
    )

    dump("identity_rep_m2.json", rep_to_json(pos.identity_rep(2)))


if __name__ == "__main__":
    main()
