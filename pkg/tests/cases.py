"""Shared inputs for the structure tests and the acceptance suite."""

import math
from dataclasses import replace

from cmcbounds.config import load_config, params_from_dict, structure_from_dict
from conftest import data_path

PI = math.pi


def load_bundled(name="structure_valid.toml"):
    doc = load_config(data_path(name))
    return structure_from_dict(doc["structure"]), params_from_dict(doc["params"])


def _region(data, i, **changes):
    regions = list(data.regions)
    regions[i] = replace(regions[i], **changes)
    return replace(data, regions=tuple(regions))


# each mutation breaks exactly one inequality of the valid example
MUTATIONS = {
    "index_one_regions": lambda d: _region(d, 0, genus=1, e=1),
    "orientable_region_topology": lambda d: _region(d, 1, genus=3, e=1, m=3),
    "nonorientable_region_topology": lambda d: _region(d, 2, genus=5),
    "euler_characteristic": lambda d: _region(d, 1, e=3, m=4, kappa=8 * PI - 0.03),
    "boundary_curvature_per_region": lambda d: _region(d, 1, kappa=6 * PI - 0.13),
    "region_total_curvature": lambda d: _region(d, 1, genus=0, e=1, m=2, kappa=4 * PI - 0.03),
    "genus_drop": lambda d: replace(d, genus_M=22),
    "area_outside_regions": lambda d: replace(d, area_M_tilde=0.5),
}
