#!/usr/bin/env python3
"""Write data/canadian_weather.csv.

Mean monthly air temperature (degrees C) for 35 Canadian weather stations,
reconstructed from publicly available Environment Canada climate normals
(1961-1990 period, which closely matches the 1960-1994 averages used in
the functional-data literature).  Values are approximate to a few tenths
of a degree; see data/README.md for provenance notes.

Arguments are month midpoints on the interval [0, 12].
"""

import csv
import os

# Station -> 12 monthly means, January..December.
STATIONS = {
    "St. Johns":    [-4.0, -4.6, -2.2, 1.8, 6.4, 11.3, 15.8, 15.6, 11.8, 7.2, 3.3, -1.3],
    "Halifax":      [-5.5, -5.8, -1.5, 3.7, 9.3, 14.6, 18.3, 18.3, 14.1, 8.7, 3.7, -2.6],
    "Sydney":       [-5.8, -6.6, -2.9, 2.0, 7.5, 13.0, 17.5, 17.6, 13.5, 8.5, 3.6, -2.4],
    "Yarmouth":     [-3.6, -4.0, -0.6, 3.7, 8.4, 12.6, 16.2, 16.4, 13.2, 9.0, 4.6, -0.9],
    "Charlottetown": [-7.2, -7.5, -3.2, 2.2, 8.6, 14.4, 18.4, 17.9, 13.4, 7.9, 2.7, -4.0],
    "Fredericton":  [-9.6, -8.8, -2.7, 3.9, 10.9, 16.1, 19.0, 18.1, 13.1, 7.3, 1.1, -6.8],
    "Schefferville": [-22.8, -21.3, -14.6, -6.4, 1.4, 8.2, 12.4, 11.0, 5.5, -1.5, -9.8, -19.3],
    "Arvida":       [-16.2, -14.5, -7.6, 0.8, 8.9, 14.9, 17.4, 15.9, 10.5, 4.3, -3.5, -12.9],
    "Bagotville":   [-17.0, -15.1, -8.0, 0.5, 8.7, 14.7, 17.3, 15.8, 10.4, 4.1, -3.9, -13.7],
    "Quebec City":  [-12.4, -11.0, -4.6, 3.3, 10.8, 16.3, 19.1, 17.6, 12.5, 6.5, -0.5, -9.1],
    "Sherbrooke":   [-11.9, -10.4, -4.0, 3.7, 10.7, 15.6, 18.0, 16.6, 11.9, 6.2, -0.7, -9.2],
    "Montreal":     [-10.3, -8.8, -2.4, 5.7, 12.9, 18.0, 20.9, 19.5, 14.5, 8.3, 1.6, -6.9],
    "Ottawa":       [-10.7, -9.2, -2.6, 5.9, 13.0, 18.1, 20.8, 19.4, 14.3, 8.0, 1.5, -7.2],
    "Toronto":      [-6.7, -6.1, -0.8, 6.0, 12.3, 17.4, 20.5, 19.5, 15.2, 9.2, 3.3, -3.7],
    "London":       [-8.1, -7.5, -2.0, 5.1, 11.5, 16.7, 19.5, 18.5, 14.5, 8.6, 2.6, -4.6],
    "Thunder Bay":  [-15.0, -12.8, -5.9, 2.4, 8.7, 13.9, 17.7, 16.4, 11.2, 5.4, -2.6, -11.3],
    "Winnipeg":     [-18.3, -15.1, -7.0, 3.8, 11.6, 16.9, 19.8, 18.3, 12.4, 5.7, -4.7, -14.6],
    "The Pas":      [-21.4, -17.5, -9.7, 0.8, 9.0, 14.7, 17.7, 16.2, 9.9, 3.1, -7.7, -17.3],
    "Churchill":    [-26.9, -25.4, -20.2, -9.8, -1.1, 6.1, 11.8, 11.3, 5.5, -1.4, -12.5, -22.7],
    "Regina":       [-16.5, -12.9, -6.0, 4.1, 11.4, 16.4, 19.1, 18.1, 11.6, 4.8, -5.7, -13.7],
    "Prince Albert": [-19.1, -15.0, -7.5, 3.0, 10.3, 15.3, 17.6, 16.3, 10.2, 3.8, -7.6, -16.0],
    "Uranium City": [-24.5, -21.2, -14.0, -3.4, 5.6, 12.0, 16.0, 14.4, 7.5, -0.4, -11.9, -20.8],
    "Edmonton":     [-14.2, -10.8, -5.4, 3.7, 10.3, 14.2, 16.0, 15.0, 9.9, 4.6, -5.7, -12.2],
    "Calgary":      [-9.6, -6.3, -2.5, 4.1, 9.7, 14.0, 16.4, 15.7, 10.6, 5.7, -3.0, -8.3],
    "Kamloops":     [-5.9, -2.1, 2.8, 8.6, 13.7, 17.9, 20.9, 20.3, 14.6, 8.1, 0.9, -4.1],
    "Vancouver":    [3.0, 4.7, 6.3, 8.8, 12.1, 15.2, 17.2, 17.4, 14.3, 10.0, 6.0, 3.5],
    "Victoria":     [3.6, 4.9, 6.2, 8.6, 11.6, 14.3, 16.2, 16.3, 14.1, 10.2, 6.4, 4.2],
    "Prince George": [-12.1, -7.4, -3.0, 3.2, 8.4, 12.3, 14.5, 13.7, 9.3, 4.3, -4.0, -9.9],
    "Prince Rupert": [0.8, 2.0, 3.2, 5.4, 8.3, 10.9, 12.9, 13.2, 11.3, 7.8, 3.7, 1.7],
    "Whitehorse":   [-18.7, -13.1, -7.2, 0.3, 6.6, 11.6, 14.0, 12.7, 7.7, 0.7, -10.0, -15.9],
    "Dawson":       [-30.7, -23.4, -15.3, -2.3, 7.5, 13.9, 15.6, 12.4, 6.1, -4.4, -17.6, -26.2],
    "Yellowknife":  [-27.9, -24.5, -18.5, -6.7, 5.0, 13.1, 16.8, 14.8, 7.3, -1.4, -14.8, -24.1],
    "Iqaluit":      [-25.6, -26.0, -22.7, -14.0, -3.7, 3.4, 7.7, 7.0, 2.3, -5.0, -13.0, -22.0],
    "Inuvik":       [-28.8, -27.5, -22.4, -12.4, -0.7, 10.6, 14.2, 11.0, 3.5, -8.2, -21.6, -26.4],
    "Resolute":     [-32.0, -33.0, -31.2, -23.3, -10.9, -0.1, 4.3, 2.8, -4.7, -15.0, -24.4, -29.3],
}

MONTH_MIDPOINTS = [i + 0.5 for i in range(12)]


def main():
    out = os.path.join(os.path.dirname(__file__), "..", "data", "canadian_weather.csv")
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["station"] + [f"{t:g}" for t in MONTH_MIDPOINTS])
        for name, temps in STATIONS.items():
            writer.writerow([name] + [f"{v:g}" for v in temps])
    print(f"wrote {out}: {len(STATIONS)} stations x 12 months")


if __name__ == "__main__":
    main()
