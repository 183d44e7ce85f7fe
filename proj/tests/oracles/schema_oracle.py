"""Freezes jsonschema verdicts for mutated request bodies.

Writes fixtures/schema_cases.json: [{schema, instance, valid}], validated with
the reference jsonschema implementation (Draft 2020-12) against data/openapi.json.
"""
import copy
import json
import pathlib
import random

import jsonschema
from referencing import Registry, Resource
from referencing.jsonschema import DRAFT202012

ROOT = pathlib.Path(__file__).resolve().parents[2]
doc = json.loads((ROOT / "data" / "openapi.json").read_text(encoding="utf-8"))
registry = Registry().with_resource("urn:api", Resource(contents=doc, specification=DRAFT202012))


def validator(name):
    schema = {"$ref": "urn:api#/components/schemas/" + name}
    return jsonschema.Draft202012Validator(schema, registry=registry)


rmr = {"n_joint_families": 3, "ucs_mpa": 120, "rqd_pct": 55, "spacing_m": 0.3, "persistence_m": 2,
       "aperture_mm": 0.05, "roughness": "rough", "infilling": "none", "weathering": "slightly",
       "groundwater": "damp", "orientation_adjustment": -5}
schmidt = {"method": "ISRM", "readings": [30 + i for i in range(12)], "unit_weight_kn_m3": 26, "modulus_ratio": 300}
slope = {"dip_direction": 140, "dip": 70, "failure_mode": "planar", "excavation": "natural"}
outcrop = {"id": 1, "coordinates": {"x": 778510.0, "y": 9976405.0, "z": 2801.0}, "crs": "WGS84 / UTM 17S",
           "rock": {"rock_type": "sedimentary", "rock_name": "Arenisca", "color": "Gris"},
           "joint_sets": [{"set_label": "J1", "dip_direction": 135, "dip": 60, "count": 12}],
           "images": [{"id": "img-1", "role": "outcrop", "media_type": "image/jpeg", "byte_length": 10, "storage_key": "k"}],
           "rmr_input": rmr, "schmidt": schmidt, "slope": slope, "generated": {"outcrop_description": "Texto."}}
project = {"title": "Proyecto", "location": "Quito", "university": "U", "faculty": "F", "program": "P",
           "course": "C", "authors": ["A"], "date": "2025-06-30", "outcrops": [outcrop],
           "generated": {"objectives": "a\nb\nc"}}
smr = {"rmr_basic": 65, "joint_dip_direction": 135, "joint_dip": 60, "slope_dip_direction": 140,
       "slope_dip": 70, "failure_mode": "planar", "excavation": "mechanical"}
evaluate = {"pairs": [{"id": "Ígnea 1", "category": "igneous", "candidate": "roca gris", "reference": "roca gris clara"}]}
bases = [("Project", project), ("Outcrop", outcrop), ("RmrInput", rmr), ("SmrInput", smr),
         ("SchmidtTest", schmidt), ("StereonetRequest", {"trend": 90, "plunge": 0}),
         ("StereonetRequest", {"dip_direction": 135, "dip": 60}),
         ("StereonetRequest", {"joint_sets": [{"set_label": "J1", "dip_direction": 10, "dip": 20}]}),
         ("EvaluateRequest", evaluate), ("JointSet", {"set_label": "J2", "dip_direction": 359.5, "dip": 90})]

REPLACEMENTS = [None, True, "x", "", -1, 0, 0.5, 90, 360, 1e9, [], {}, ["a"], {"k": 1}, "planar", "igneous", 3.0]


def paths(v, prefix=()):
    yield prefix
    if isinstance(v, dict):
        for k, x in v.items():
            yield from paths(x, prefix + (k,))
    elif isinstance(v, list):
        for i, x in enumerate(v):
            yield from paths(x, prefix + (i,))


def mutate(base, rng):
    inst = copy.deepcopy(base)
    targets = [p for p in paths(inst) if p]
    p = rng.choice(targets)
    parent = inst
    for k in p[:-1]:
        parent = parent[k]
    op = rng.randrange(4)
    if op == 0 and isinstance(parent, dict):
        del parent[p[-1]]
    elif op == 1 and isinstance(parent, dict):
        parent["unexpected_" + str(rng.randrange(100))] = 1
    else:
        parent[p[-1]] = rng.choice(REPLACEMENTS)
    return inst


for name, base in bases:
    assert validator(name).is_valid(base), name

rng = random.Random(20250701)
cases = []
for name, base in bases:
    cases.append({"schema": name, "instance": base, "valid": validator(name).is_valid(base)})
    for _ in range(60):
        inst = mutate(base, rng)
        cases.append({"schema": name, "instance": inst, "valid": validator(name).is_valid(inst)})

out = ROOT / "tests" / "fixtures" / "schema_cases.json"
out.write_text(json.dumps(cases, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")
print(len(cases), "cases,", sum(c["valid"] for c in cases), "valid")
