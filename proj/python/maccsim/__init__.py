"""Coded caching arrays, multi-access schemes, and a bit-exact simulator.

The heavy lifting lives in the C++ extension; this wrapper adds dict-returning
simulation helpers on top of the JSON strings the extension emits.
"""

import json as _json

from ._maccsim import (  # noqa: F401
    Macc1dScheme,
    Macc2dScheme,
    PartitionFamily,
    PdaArray,
    accessible_nodes,
    baseline_corners,
    baseline_load,
    baseline_scheme,
    cwlzc_scheme,
    gain_profile,
    grouping_corners,
    grouping_load,
    grouping_scheme,
    hybrid_corners,
    hybrid_load,
    hybrid_scheme,
    make_1d_scheme,
    mds_decode,
    mds_encode,
    mn_pda,
    partition_pda,
    pda_from_json,
    simulate_scheme_json,
    tradeoff_csv,
    tradeoff_envelope,
    verify_pda,
)


def simulate(scheme, demand="all-distinct", files=0, packet_size=64, seed=1, transcript=False):
    """Run placement, delivery, and decoding; returns the report as a dict."""
    return _json.loads(
        scheme.simulate(
            demand=demand,
            files=files,
            packet_size=packet_size,
            seed=seed,
            transcript=transcript,
        )
    )


def simulate_json_file(path, **kwargs):
    with open(path, "r", encoding="utf-8") as fh:
        return _json.loads(simulate_scheme_json(fh.read(), **kwargs))
