#!/usr/bin/env python3
"""Regenerate bench/transcripts/*.json from bench/blueprints/*.vsl.

Each transcript scripts three turns: the layout synopsis, the blueprint
code (byte-identical to the checked-in .vsl), and the judge's scores.
"""
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
BLUEPRINTS = ROOT / "bench" / "blueprints"
TRANSCRIPTS = ROOT / "bench" / "transcripts"

SYNOPSES = {
    "wooden_house": """1. Components and Positioning: An 8x8 oak plank shell five blocks tall forms the house. The front wall holds an oak door at the horizontal center with glass windows to its right; the back wall has two more glass windows. Inside sit a bed against the west wall, a crafting table in the southeast corner, and a single oak log roof post near the middle of the floor.
2. Dimensional Layout: Length 8, width 8, height 5.
3. Description: A small starter house. Build the floor and walls first, then the central post, then close the roof from inside; furnishing (door, bed, crafting table) goes last so the open doorway keeps the interior reachable.""",
    "snow_pyramid": """1. Components and Positioning: Five square layers of snow blocks stacked concentrically: a 9x9 base, then 7x7, 5x5, 3x3, and a single capstone, each layer inset one block per side. The capstone is packed ice instead of snow.
2. Dimensional Layout: Length 9, width 9, height 5.
3. Description: A stepped pyramid. Build each layer bottom to top; the one-block steps let the builder walk up the side, so no layer blocks access to the one above.""",
    "village_house": """1. Components and Positioning: A 6x6 cobblestone floor carries oak plank walls two blocks tall with oak log posts at the four corners, a flat oak plank roof, and a two-block doorway in the front wall. An oak log post near the middle supports the roof. Two torches light the interior corners.
2. Dimensional Layout: Length 6, width 6, height 4.
3. Description: A compact village dwelling in the classic palette. Lay the floor, raise the walls and corner posts, add the interior post, roof it from inside, then carve the doorway free and place the torches.""",
    "watchtower": """1. Components and Positioning: A 3x3 stone brick pedestal two blocks tall, a single-column stone brick shaft rising from its center, and a 3x3 platform on top. A redstone lamp sits at the platform center with an inverted daylight sensor directly above it.
2. Dimensional Layout: Length 3, width 3, height 13.
3. Description: A beacon watchtower. Build the pedestal, then the shaft and platform with temporary climbing blocks, and finish with the lamp and sensor so the light switches on at night.""",
    "mansion": """1. Components and Positioning: A 10x8 spruce plank foundation carries stone brick perimeter walls three blocks tall with a dividing wall splitting the ground floor into two rooms, a full spruce plank terrace slab, and a low parapet ring above it. An oak plank staircase in the east room climbs through a stairwell to the terrace. A brick chimney rises through the terrace to a campfire. The front wall has an oak door; a small flower garden sits west of the building.
2. Dimensional Layout: Length 12 including the garden, width 8, height 8.
3. Description: A two-storey mansion with a roof terrace. Build the foundation, walls, and staircase first, then the terrace slab leaving the stairwell open, then the parapet and chimney from the terrace; the door and garden flowers come last.""",
}

SCORES = {
    "wooden_house": {"correctness": 9, "complexity": 6, "creativity": 6, "functionality": 9, "total": 30},
    "snow_pyramid": {"correctness": 10, "complexity": 5, "creativity": 8, "functionality": 6, "total": 29},
    "village_house": {"correctness": 9, "complexity": 7, "creativity": 6, "functionality": 8, "total": 30},
    "watchtower": {"correctness": 9, "complexity": 7, "creativity": 7, "functionality": 10, "total": 33},
    "mansion": {"correctness": 8, "complexity": 9, "creativity": 8, "functionality": 8, "total": 33},
}


def main() -> None:
    TRANSCRIPTS.mkdir(parents=True, exist_ok=True)
    for vsl in sorted(BLUEPRINTS.glob("*.vsl")):
        name = vsl.stem
        code = vsl.read_text()
        turns = [
            {
                "expect_substring": "Please translate the structure",
                "response": SYNOPSES[name],
            },
            {
                "expect_substring": "Please provide the code for this structure",
                "response": json.dumps({"code": code}, separators=(",", ":")),
            },
            {
                "expect_substring": "Please provide a score (out of 10)",
                "response": json.dumps(SCORES[name], separators=(",", ":")),
            },
        ]
        out = TRANSCRIPTS / f"{name}.json"
        out.write_text(json.dumps(turns, indent=2) + "\n")
        print(f"wrote {out}")


if __name__ == "__main__":
    main()
