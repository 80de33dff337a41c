#!/usr/bin/env python3
"""Rebuild ecuador_energy_1970_2015.csv from the component tables below.

Every component is an approximate transcription of the public series named in
SNAPSHOT.md. No network access was available while compiling it, so values
are not verified against any particular vintage of the source workbooks.
"""
import csv
import math
import pathlib

YEARS = list(range(1970, 2016))

# Primary energy consumption, Mtoe (BP Statistical Review, Ecuador row).
PEC_MTOE = [
    1.27, 1.38, 1.52, 1.75, 2.05, 2.45, 2.85, 3.20, 3.70, 4.10,
    4.45, 4.70, 4.95, 4.90, 5.05, 5.20, 5.35, 5.30, 5.70, 5.85,
    5.95, 6.10, 6.30, 6.45, 6.70, 7.10, 7.40, 7.85, 8.10, 7.70,
    8.32, 8.55, 8.80, 8.95, 9.40, 10.10, 10.80, 11.30, 11.70, 12.30,
    13.30, 13.90, 14.40, 15.00, 15.60, 15.38,
]

# Population, millions (World Bank), anchors every five years.
POP_ANCHORS = {1970: 6.07, 1975: 6.99, 1980: 8.00, 1985: 9.10, 1990: 10.22,
               1995: 11.39, 2000: 12.63, 2005: 13.83, 2010: 15.01, 2015: 16.21}

# Real GDP growth, percent, 1971..2015 (World Bank / Central Bank of Ecuador).
GDP_GROWTH = [
    6.3, 14.4, 25.3, 6.4, 5.6, 9.2, 6.5, 6.6, 5.3,
    4.9, 3.9, 1.2, -2.8, 4.2, 4.3, 3.1, -6.0, 10.5, 0.3,
    3.0, 5.0, 3.6, 2.0, 4.3, 2.3, 1.7, 4.3, 3.3, -4.7,
    1.1, 4.0, 4.1, 2.7, 8.2, 5.3, 4.4, 2.2, 6.4, 0.6,
    3.5, 7.9, 5.6, 4.9, 3.8, 0.1,
]
GDP_2007_MUSD = 51007.0

# Industry value added growth, percent, 1971..2015 (World Bank).
IND_GROWTH = [
    5, 40, 55, 2, -2, 12, 4, 6, 6,
    2, 4, -1, -1, 8, 7, 3, -18, 24, -1,
    3, 7, 4, 3, 6, 2, 3, 4, 0, -2,
    2, 1, 3, 5, 14, 4, 3, -1, 6, -1,
    1, 8, 5, 5, 4, -1,
]
IND_2007_MUSD = 17000.0

# Crude oil spot price, US$ money of the day (BP: Arabian Light to 1983, Brent after).
OIL_NOMINAL = [
    1.80, 2.24, 2.48, 3.29, 11.58, 11.53, 12.80, 13.92, 14.02, 31.61,
    36.83, 35.93, 32.97, 29.55, 28.78, 27.56, 14.43, 18.44, 14.92, 18.23,
    23.73, 20.00, 19.32, 16.97, 15.82, 17.02, 20.67, 19.09, 12.72, 17.97,
    28.50, 24.44, 25.02, 28.83, 38.27, 54.52, 65.14, 72.39, 97.26, 61.67,
    79.50, 111.26, 111.67, 108.66, 98.95, 52.39,
]

# US CPI-U annual averages, used to express the oil price in 2015 dollars.
CPI = [
    38.8, 40.5, 41.8, 44.4, 49.3, 53.8, 56.9, 60.6, 65.2, 72.6,
    82.4, 90.9, 96.5, 99.6, 103.9, 107.6, 109.6, 113.6, 118.3, 124.0,
    130.7, 136.2, 140.3, 144.5, 148.2, 152.4, 156.9, 160.5, 163.0, 166.6,
    172.2, 177.1, 179.9, 184.0, 188.9, 195.3, 201.6, 207.342, 215.303, 214.537,
    218.056, 224.939, 229.594, 232.957, 236.736, 237.017,
]


def population():
    out = []
    anchors = sorted(POP_ANCHORS.items())
    for year in YEARS:
        for (y0, p0), (y1, p1) in zip(anchors, anchors[1:]):
            if y0 <= year <= y1:
                w = (year - y0) / (y1 - y0)
                out.append(math.exp((1 - w) * math.log(p0) + w * math.log(p1)))
                break
    return out


def chain(growth, anchor_year, anchor_value):
    level = [1.0]
    for g in growth:
        level.append(level[-1] * (1.0 + g / 100.0))
    scale = anchor_value / level[YEARS.index(anchor_year)]
    return [v * scale for v in level]


def main():
    pop = population()
    gdp = chain(GDP_GROWTH, 2007, GDP_2007_MUSD)
    ind = chain(IND_GROWTH, 2007, IND_2007_MUSD)
    rows = []
    for i, year in enumerate(YEARS):
        rows.append({
            "year": year,
            "energy_pc": f"{PEC_MTOE[i] / pop[i]:.6f}",
            "gdp_pc": f"{gdp[i] / pop[i]:.4f}",
            "oil_price": f"{OIL_NOMINAL[i] * CPI[-1] / CPI[i]:.4f}",
            "industry": f"{ind[i]:.3f}",
            "oil_price_nominal": f"{OIL_NOMINAL[i]:.2f}",
        })
    path = pathlib.Path(__file__).with_name("ecuador_energy_1970_2015.csv")
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


if __name__ == "__main__":
    main()
