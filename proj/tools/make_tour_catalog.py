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
"""Writes the tour-scale test catalog: 3 rooms, 9 walls, 51 targets/clips.

Fifty clip lengths fall in [5500, 27000] ms (both ends present); one story
clip runs 59000 ms.
"""
import json
import random
import sys

ROOMS = ["entrance_hall", "library", "dining_room"]
WALL_W, WALL_H = 320, 240
PER_WALL = [6, 6, 5]


def main(path):
    rng = random.Random(20030405)
    durations = [5500, 27000] + [rng.randint(5500, 27000) for _ in range(48)]
    rng.shuffle(durations)
    durations.insert(17, 59000)

    rooms, walls, clips = [], [], []
    clip_id = 1
    for room in ROOMS:
        wall_ids = []
        for w, count in enumerate(PER_WALL):
            wall_id = f"{room}_w{w}"
            wall_ids.append(wall_id)
            targets = []
            for k in range(count):
                col, row = k % 3, k // 3
                x = 10 + col * 100 + rng.randint(0, 20)
                y = 15 + row * 110 + rng.randint(0, 20)
                targets.append({
                    "target_id": f"{wall_id}_t{k}",
                    "rect": [x, y, rng.randint(40, 70), rng.randint(40, 80)],
                    "clip_id": clip_id,
                })
                clips.append({
                    "clip_id": clip_id,
                    "duration_ms": durations[clip_id - 1],
                    "title": f"{room.replace('_', ' ')} object {clip_id}",
                })
                clip_id += 1
            walls.append({"wall_id": wall_id, "room_id": room, "width_px": WALL_W,
                          "height_px": WALL_H, "targets": targets})
        rooms.append({"room_id": room, "walls": wall_ids})

    doc = {"rooms": rooms, "walls": walls, "clips": clips, "tap_tip_ms": 1500}
    with open(path, "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "catalog_tour.json")
