#!/usr/bin/env python3
# Copyright 2026 The pairguide Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes a 25-minute two-visitor tour over the tour catalog.

The pair moves through the three rooms together, roughly eight minutes per
room, and between them makes 40 selections (taps on target centres), with a
few missed taps, wall switches and volume changes. Usage:

  make_tour_scenario.py CATALOG OUT [--loss P] [--latency MIN MAX] [--seed N]
"""
import argparse
import json
import random

DURATION_MS = 25 * 60 * 1000


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("catalog")
    ap.add_argument("out")
    ap.add_argument("--loss", type=float, default=0.0)
    ap.add_argument("--dup", type=float, default=0.0)
    ap.add_argument("--latency", type=int, nargs=2, default=[0, 0])
    ap.add_argument("--seed", type=int, default=25)
    args = ap.parse_args()

    catalog = json.load(open(args.catalog))
    walls = {w["wall_id"]: w for w in catalog["walls"]}
    durations = {c["clip_id"]: c["duration_ms"] for c in catalog["clips"]}
    rng = random.Random(args.seed)

    events = []
    room_span = DURATION_MS // len(catalog["rooms"])
    for r, room in enumerate(catalog["rooms"]):
        room_start = r * room_span
        for device in (1, 2):
            t = room_start + rng.randint(0, 20000)
            wall_seq = list(room["walls"])
            rng.shuffle(wall_seq)
            picks = 7 if (r + device) % 2 else 6
            per_wall = [picks // 3 + (1 if i < picks % 3 else 0) for i in range(3)]
            for wall_id, count in zip(wall_seq, per_wall):
                events.append((t, device, {"type": "switch_wall", "wall_id": wall_id}))
                t += rng.randint(3000, 15000)
                wall = walls[wall_id]
                for target in rng.sample(wall["targets"], count):
                    if rng.random() < 0.15:
                        events.append((t, device, {"type": "tap", "wall_id": wall_id,
                                                   "x": 2, "y": 2}))
                        t += rng.randint(1000, 4000)
                    x, y, w, h = target["rect"]
                    events.append((t, device, {"type": "tap", "wall_id": wall_id,
                                               "x": x + w // 2, "y": y + h // 2}))
                    listen = durations[target["clip_id"]]
                    # Sometimes cut a clip short with the next selection.
                    t += rng.randint(listen // 3, listen) if rng.random() < 0.2 \
                        else listen + rng.randint(5000, 45000)
                    if rng.random() < 0.08:
                        level = rng.choice(["off", "quiet", "loud"])
                        events.append((t, device, {"type": "set_volume", "level": level}))
                        t += rng.randint(500, 3000)
            if t >= room_start + room_span:
                raise SystemExit("room schedule overflow; pick another seed")

    events.sort(key=lambda e: (e[0], e[1]))
    first_wall = catalog["rooms"][0]["walls"][0]
    doc = {
        "duration_ms": DURATION_MS,
        "network": {"seed": args.seed, "latency_ms": args.latency, "loss_prob": args.loss,
                    "dup_prob": args.dup, "beacon_period_ms": 1000},
        "devices": [{"device_id": d, "group_id": 1, "initial_volume": "quiet",
                     "initial_wall": first_wall} for d in (1, 2)],
        "events": [{"t_ms": t, "device_id": d, "action": a} for t, d, a in events],
    }
    with open(args.out, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")
    taps = sum(1 for _, _, a in events if a["type"] == "tap")
    print(f"{len(events)} events, {taps} taps")


if __name__ == "__main__":
    main()
