#!/usr/bin/env python3
"""
lfmkit is a numerics toolkit for the Lebesgue-Feynman measure.
Copyright (C) 2026 lfmkit developers.

This program is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

This program is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.

You should have received a copy of the GNU General Public License
along with this program.  If not, see <http://www.gnu.org/licenses/>.
"""

"""
Build the flow that rotates the reference paths within their span and write its construction
residuals as JSON.

    python scripts/construct_anomaly_flow.py --n 4 --seed 0 --output results/anomaly_flow.json
"""

import sys
import json
import argparse

from lfmkit.cli.runner import write_atomic
from lfmkit.cov_anomaly.anomaly import construct_anomalous_flow


def main(argv=None):
    parser = argparse.ArgumentParser(description="Write the construction residuals of the anomalous flow.")
    parser.add_argument("--n", type=int, default=4, help="path coordinates")
    parser.add_argument("--n-reference", type=int, default=2, help="reference paths rotated by the flow")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--strength", type=float, default=0.2, help="scale of the generator's diagonal")
    parser.add_argument("--rotation", type=float, default=1.0, help="angular rate on the references")
    parser.add_argument("--output", default="-", help="output path, - for stdout")
    args = parser.parse_args(argv)

    flow = construct_anomalous_flow(args.n, args.n_reference, args.seed, args.strength, args.rotation)
    document = {
        "n": args.n,
        "n_reference": args.n_reference,
        "seed": args.seed,
        "strength": args.strength,
        "rotation": args.rotation,
        "references": flow.references.tolist(),
        "generator": flow.generator.tolist(),
        "residuals": flow.residuals,
    }
    text = json.dumps(document, indent=2, sort_keys=True)
    if args.output == "-":
        print(text)
    else:
        write_atomic(args.output, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
