"""Script to write reproducible random instances for manual runs of `conedual`.

Writes one directory per input kind, each holding numbered JSON files that can be passed
straight to `conedual <command> --input <directory>`:

    polyhedra/   for `conedual polar`
    quadruples/  for `conedual check`
    instances/   for `conedual sums` and `conedual ando`
"""

import json
import os

import numpy as np
from loguru import logger
from tqdm import tqdm

from cone_duality.random_instances import random_instance, random_polyhedron, random_quadruple
from cone_duality.save.serialize import polyhedron_to_json, to_jsonable

# USER CONFIGURABLE PARAMETERS

seed: int = 1729
count: int = 10
max_dim: int = 3
save_path: str = "generated_instances"


def quadruple_to_json(q) -> dict:
    return {"dim": q.dim, **{name: polyhedron_to_json(getattr(q, name)) for name in ("C", "D", "B1", "B2")}}


def instance_to_json(inst, point) -> dict:
    return {
        "d": inst.d,
        "m": inst.m,
        "p": to_jsonable(inst.p),
        "base_ball": polyhedron_to_json(inst.base_ball),
        "cones": [polyhedron_to_json(c) for c in inst.cones],
        "point": to_jsonable(point),
    }


def write(kind: str, index: int, document: dict) -> None:
    directory = os.path.join(save_path, kind)
    os.makedirs(directory, exist_ok=True)
    with open(os.path.join(directory, f"{index:03d}.json"), "w") as f:
        json.dump(document, f, indent=2, sort_keys=True)


if __name__ == "__main__":
    rng = np.random.default_rng(seed)
    for k in tqdm(range(count), desc="Generating instances"):
        dim = int(rng.integers(1, max_dim + 1))
        write("polyhedra", k, polyhedron_to_json(random_polyhedron(rng, dim)))
        write("quadruples", k, quadruple_to_json(random_quadruple(rng, dim)))

        d, m = int(rng.integers(1, 3)), int(rng.integers(1, 3))
        inst = random_instance(rng, d, m)
        point = tuple(int(v) for v in rng.integers(-3, 4, size=d))
        write("instances", k, instance_to_json(inst, point))
    logger.info(f"Wrote {count} instances of each kind to {save_path}")
