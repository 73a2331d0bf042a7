"""
Direct-sum instance JSON:

    {
        "d": 2, "m": 2, "p": 1,
        "base_ball": {"v": {"vertices": [[1, 1], [1, -1], [-1, 1], [-1, -1]]}},
        "cones": [{"v": {"vertices": [[0, 0]], "rays": [[1, 0]]}}, ...],
        "point": [1, 1]
    }

p is 1, "inf" or any rational at least 1 ("3/2", "2.5"); "point" is only read by ando.
"""

from dataclasses import dataclass
from typing import Optional

from cone_duality.banach_sums import DirectSumInstance
from cone_duality.data.read_polyhedron import checked_vector, check_ceiling, parse_polyhedron
from cone_duality.polyrat import RatVector, parse_extended


@dataclass(frozen=True)
class InstanceDocument:
    instance: DirectSumInstance
    point: Optional[RatVector] = None


def parse_p(value) -> object:
    if isinstance(value, float):
        value = repr(value)
    return parse_extended(value)


def parse_instance(document: dict, p_override=None) -> InstanceDocument:
    d, m = int(document["d"]), int(document["m"])
    check_ceiling(d * m)
    p = parse_p(p_override if p_override is not None else document.get("p", 1))
    instance = DirectSumInstance(
        d=d,
        m=m,
        base_ball=parse_polyhedron(document["base_ball"], d),
        cones=tuple(parse_polyhedron(cone, d) for cone in document["cones"]),
        p=p,
    )
    point = None
    if "point" in document:
        point = checked_vector(document["point"], d, "Point")
    return InstanceDocument(instance=instance, point=point)
