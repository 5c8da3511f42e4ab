#!/usr/bin/env python3
"""Writes a 48-customer, 4-depot, 2-vehicles-per-depot MDVRPTW instance in the
Cordeau text format.

Layout follows the published pr-series conventions: coordinates in
[-100, 100]^2, service times and demands in 1..25, D = 500, Q = 200, depot
horizon [0, 1000]. Time windows are planted around a sweep schedule so a
capacity- and duration-feasible solution with zero tardiness is known to
exist.

    python3 data/make_surrogate.py > data/pr01_surrogate.txt
"""

import math
import random
import sys

CUSTOMERS = 48
DEPOTS = 4
PER_DEPOT = 2
MAX_DURATION = 500
CAPACITY = 200
HORIZON = 1000


def attempt(rng):
    depots = [(round(rng.uniform(-60, 60), 3), round(rng.uniform(-60, 60), 3)) for _ in range(DEPOTS)]
    customers = []
    for i in range(CUSTOMERS):
        customers.append({
            "id": i + 1,
            "x": round(rng.uniform(-100, 100), 3),
            "y": round(rng.uniform(-100, 100), 3),
            "service": rng.randint(1, 25),
            "demand": rng.randint(1, 25),
        })

    def dist(a, b):
        return math.hypot(a[0] - b[0], a[1] - b[1])

    clusters = [[] for _ in range(DEPOTS)]
    for c in customers:
        k = min(range(DEPOTS), key=lambda d: dist((c["x"], c["y"]), depots[d]))
        clusters[k].append(c)

    for k, members in enumerate(clusters):
        dx, dy = depots[k]
        members.sort(key=lambda c: math.atan2(c["y"] - dy, c["x"] - dx))
        half = (len(members) + 1) // 2
        for route in (members[:half], members[half:]):
            clock, load, last = 0.0, 0, depots[k]
            for c in route:
                arrival = clock + dist(last, (c["x"], c["y"]))
                width = rng.uniform(60, 200)
                open_ = max(0.0, arrival - rng.uniform(0, width))
                c["open"] = math.floor(open_)
                c["close"] = math.ceil(max(open_ + width, arrival))
                clock = arrival + c["service"]
                load += c["demand"]
                last = (c["x"], c["y"])
            duration = clock + dist(last, depots[k])
            if load > CAPACITY or duration > MAX_DURATION:
                return None
    return depots, customers


def main():
    rng = random.Random(2001)
    while True:
        built = attempt(rng)
        if built:
            break
    depots, customers = built
    out = sys.stdout
    out.write(f"6 {PER_DEPOT} {CUSTOMERS} {DEPOTS}\n")
    for _ in range(DEPOTS):
        out.write(f"{MAX_DURATION} {CAPACITY}\n")
    combos = " ".join(str(1 << k) for k in range(DEPOTS))
    for c in customers:
        out.write(f"{c['id']:3d} {c['x']:8.3f} {c['y']:8.3f} {c['service']:3d} {c['demand']:3d}"
                  f" 1 {DEPOTS} {combos} {c['open']:4d} {c['close']:4d}\n")
    for k, (x, y) in enumerate(depots):
        out.write(f"{CUSTOMERS + k + 1:3d} {x:8.3f} {y:8.3f}   0   0 0 0 0 {HORIZON:4d}\n")


if __name__ == "__main__":
    main()
