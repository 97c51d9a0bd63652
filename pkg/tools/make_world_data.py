#!/usr/bin/env python3
"""Write data/world_tfr.csv and data/world_leb.csv (190 countries, 1960-2013).

Total fertility rate comes from the World Bank extract bundled with
statsmodels (a 2014-era World Development Indicators download, series
SP.DYN.TFRT.IN).  That vintage has no values for 2012-2013, so the last
two years are filled by clipped linear extrapolation of the 2007-2011
trend; interior gaps (Singapore, Luxembourg) are kept as missing cells.

Life expectancy at birth is a reconstruction, not a single database
export.  For the 142 economies covered by the Gapminder excerpt bundled
with plotly, the real five-yearly 1955-2007 trajectory is interpolated
annually (shape-preserving PCHIP) and extended to 2013 toward a curated
anchor level.  For the remaining economies a smooth logistic trajectory
between approximate 1960 and 2013 levels is used, plus localised dips for
major mortality events (HIV in southern Africa, the 1994 Rwandan
genocide, the Khmer Rouge years, ...).  Anchor levels come from public
summary statistics and are approximate.  See data/README.md.

Aggregates are excluded; countries with more than six missing TFR years
in 1960-2011 are dropped, leaving 190 economies.
"""

import csv
import os

import numpy as np

YEARS = list(range(1960, 2014))

AGGREGATES = {
    "Latin America & Caribbean (all income levels)",
    "OECD members",
    "Other small states",
    "Pacific island small states",
    "Sub-Saharan Africa (IFC classification)",
}

# name: (leb_1960, leb_2013_baseline, logistic_mid_year, logistic_width,
#        dips) where each dip is (amplitude, center_year, width_before,
#        width_after).  For countries with large dips near 2013 the
#        baseline is the counterfactual no-dip level, so the realised 2013
#        value is baseline minus the dip tail.
LEB_PARAMS = {
    "Aruba": (65.7, 75.5, 1985, 14, []),
    "Afghanistan": (32.3, 60.9, 1992, 13, [(1.5, 1985, 5, 5)]),
    "Angola": (33.0, 52.5, 1985, 12, [(4.0, 1993, 8, 7)]),
    "Albania": (62.3, 77.5, 1985, 13, []),
    "United Arab Emirates": (52.3, 77.0, 1978, 9, []),
    "Argentina": (65.2, 76.0, 1985, 14, []),
    "Armenia": (65.9, 74.6, 1990, 14, [(1.5, 1991, 3, 3)]),
    "Antigua and Barbuda": (61.8, 75.9, 1985, 13, []),
    "Australia": (70.8, 82.2, 1992, 13, []),
    "Austria": (68.6, 81.1, 1990, 13, []),
    "Azerbaijan": (60.9, 70.7, 1988, 13, [(1.5, 1994, 3, 3)]),
    "Burundi": (41.3, 56.0, 1992, 14, [(3.0, 1997, 5, 6)]),
    "Belgium": (69.7, 80.6, 1990, 13, []),
    "Benin": (37.3, 59.3, 1988, 12, []),
    "Burkina Faso": (34.5, 58.0, 1990, 11, []),
    "Bangladesh": (45.8, 71.2, 1988, 11, [(5.0, 1972, 2, 2.5)]),
    "Bulgaria": (69.2, 74.5, 1985, 16, []),
    "Bahrain": (52.1, 76.5, 1977, 9, []),
    "Bahamas, The": (62.7, 75.0, 1983, 13, []),
    "Bosnia and Herzegovina": (60.3, 76.3, 1982, 12, [(3.0, 1993, 2, 2)]),
    "Belarus": (67.7, 72.0, 1985, 18, [(2.0, 1998, 4, 5)]),
    "Belize": (59.8, 73.8, 1983, 12, []),
    "Bolivia": (42.1, 67.3, 1988, 12, []),
    "Brazil": (54.1, 74.1, 1984, 12, []),
    "Barbados": (60.7, 75.3, 1982, 13, []),
    "Brunei Darussalam": (62.5, 78.5, 1982, 12, []),
    "Bhutan": (32.4, 68.3, 1990, 12, []),
    "Botswana": (50.5, 68.0, 1978, 10, [(20.0, 2003, 6.5, 8)]),
    "Central African Republic": (36.5, 51.0, 1985, 13, [(2.5, 2000, 7, 7)]),
    "Canada": (71.1, 81.4, 1990, 13, []),
    "Switzerland": (71.3, 82.7, 1990, 13, []),
    "Channel Islands": (71.8, 80.4, 1998, 22, []),
    "Chile": (57.0, 78.8, 1982, 10, []),
    "China": (44.0, 75.4, 1975, 9, [(9.0, 1960.8, 2.0, 2.2)]),
    "Cote d'Ivoire": (36.9, 51.5, 1982, 12, [(3.0, 2000, 7, 6)]),
    "Cameroon": (41.5, 55.5, 1984, 12, [(3.0, 1998, 6, 6)]),
    "Congo, Rep.": (48.6, 58.6, 1985, 14, [(2.0, 1997, 5, 5)]),
    "Colombia": (56.7, 73.8, 1982, 12, []),
    "Comoros": (41.6, 62.9, 1988, 12, []),
    "Cabo Verde": (48.9, 72.8, 1983, 11, []),
    "Costa Rica": (60.6, 79.2, 1980, 11, []),
    "Cuba": (63.9, 79.2, 1982, 12, []),
    "Cyprus": (69.6, 79.9, 1988, 13, []),
    "Czech Republic": (70.4, 78.3, 1995, 12, []),
    "Germany": (69.3, 80.5, 1990, 13, []),
    "Djibouti": (44.0, 61.5, 1988, 13, []),
    "Denmark": (72.2, 80.1, 1995, 14, []),
    "Dominican Republic": (51.8, 73.2, 1982, 11, []),
    "Algeria": (46.1, 75.9, 1983, 10, []),
    "Ecuador": (53.2, 75.4, 1982, 11, []),
    "Egypt, Arab Rep.": (48.1, 70.9, 1983, 11, []),
    "Eritrea": (37.4, 62.5, 1990, 12, [(1.5, 2000, 2, 2)]),
    "Spain": (69.1, 83.1, 1988, 13, []),
    "Estonia": (67.9, 76.4, 1998, 10, [(2.0, 1994, 3, 3)]),
    "Ethiopia": (38.4, 63.6, 1995, 10, [(2.5, 1985, 3, 3)]),
    "Finland": (68.8, 81.1, 1988, 13, []),
    "Fiji": (55.9, 69.9, 1980, 13, []),
    "France": (69.9, 82.2, 1990, 13, []),
    "Micronesia, Fed. Sts.": (57.6, 68.9, 1983, 14, []),
    "Gabon": (39.6, 63.8, 1983, 11, []),
    "United Kingdom": (71.1, 81.0, 1992, 13, []),
    "Georgia": (63.6, 74.1, 1985, 15, []),
    "Ghana": (45.8, 61.1, 1985, 13, []),
    "Guinea": (34.8, 58.2, 1992, 11, []),
    "Gambia, The": (32.1, 60.2, 1987, 10, []),
    "Guinea-Bissau": (37.8, 54.3, 1990, 13, []),
    "Equatorial Guinea": (36.7, 57.2, 1988, 12, []),
    "Greece": (68.2, 81.4, 1986, 13, []),
    "Grenada": (59.7, 73.2, 1982, 13, []),
    "Guatemala": (45.5, 71.7, 1984, 11, []),
    "Guam": (61.2, 79.0, 1984, 12, []),
    "Guyana": (60.3, 66.3, 1982, 16, []),
    "Hong Kong SAR, China": (67.0, 83.8, 1985, 12, []),
    "Honduras": (46.3, 73.1, 1981, 10, []),
    "Croatia": (64.8, 77.3, 1986, 14, [(1.0, 1992, 2, 2)]),
    "Haiti": (42.1, 62.7, 1986, 12, [(29.0, 2010, 0.7, 0.7)]),
    "Hungary": (68.0, 75.3, 1995, 13, []),
    "Indonesia": (48.6, 68.9, 1982, 11, []),
    "India": (41.4, 66.5, 1985, 12, []),
    "Ireland": (69.8, 81.0, 1992, 12, []),
    "Iran, Islamic Rep.": (44.9, 75.1, 1983, 9, [(1.5, 1984, 3, 3)]),
    "Iraq": (48.0, 69.4, 1980, 11, [(2.0, 1991, 2, 3), (2.0, 2005, 2, 3)]),
    "Iceland": (73.4, 82.1, 1990, 14, []),
    "Israel": (72.0, 82.0, 1990, 13, []),
    "Italy": (69.1, 82.3, 1988, 13, []),
    "Jamaica": (64.1, 73.5, 1980, 13, []),
    "Jordan": (52.6, 73.9, 1980, 11, []),
    "Japan": (67.7, 83.3, 1975, 11, []),
    "Kazakhstan": (58.4, 70.5, 1982, 14, [(2.5, 1996, 4, 4)]),
    "Kenya": (46.4, 63.0, 1980, 11, [(11.0, 2000, 7, 6)]),
    "Kyrgyz Republic": (56.2, 70.2, 1982, 13, [(1.5, 1995, 3, 3)]),
    "Cambodia": (41.2, 69.0, 1994, 9, [(25.0, 1977, 5, 4)]),
    "Kiribati": (49.0, 65.7, 1983, 13, []),
    "Korea, Rep.": (53.0, 81.5, 1980, 13, []),
    "Kuwait": (60.3, 74.3, 1978, 11, [(1.0, 1991, 1.5, 1.5)]),
    "Lao PDR": (43.0, 65.5, 1990, 12, []),
    "Lebanon": (63.3, 79.9, 1985, 13, [(2.0, 1982, 4, 4)]),
    "Liberia": (34.8, 60.0, 1985, 14, [(8.0, 1992, 4, 5)]),
    "Libya": (42.6, 71.6, 1978, 10, [(2.0, 2011, 0.7, 1.5)]),
    "St. Lucia": (57.3, 74.9, 1982, 12, []),
    "Sri Lanka": (59.7, 74.2, 1980, 13, []),
    "Lesotho": (46.5, 63.0, 1978, 11, [(19.5, 2005, 7, 12)]),
    "Lithuania": (69.8, 74.3, 1990, 16, [(2.0, 1994, 3, 4)]),
    "Luxembourg": (68.4, 81.9, 1990, 12, []),
    "Latvia": (69.7, 73.9, 1990, 17, [(2.5, 1994, 3, 4)]),
    "Macao SAR, China": (64.5, 80.3, 1983, 12, []),
    "Morocco": (48.4, 73.7, 1985, 11, []),
    "Moldova": (62.0, 68.8, 1980, 15, [(1.5, 1995, 3, 4)]),
    "Madagascar": (40.0, 64.3, 1988, 12, []),
    "Maldives": (37.3, 77.9, 1986, 11, []),
    "Mexico": (57.0, 77.2, 1982, 12, []),
    "Macedonia, FYR": (60.6, 75.2, 1982, 13, []),
    "Mali": (28.2, 57.0, 1992, 11, []),
    "Malta": (69.2, 80.7, 1988, 13, []),
    "Myanmar": (42.9, 64.9, 1985, 13, []),
    "Montenegro": (63.5, 76.2, 1983, 13, []),
    "Mongolia": (48.6, 67.5, 1983, 12, []),
    "Mozambique": (35.0, 52.0, 1990, 13, [(3.0, 1990, 6, 8)]),
    "Mauritania": (43.4, 62.8, 1985, 13, []),
    "Mauritius": (58.7, 73.4, 1982, 13, []),
    "Malawi": (37.8, 58.0, 1988, 12, [(9.0, 1999, 8, 6)]),
    "Malaysia": (59.5, 74.8, 1980, 12, []),
    "Namibia": (48.6, 66.0, 1980, 12, [(13.0, 2004, 7, 6)]),
    "New Caledonia": (58.5, 77.0, 1983, 12, []),
    "Niger": (36.4, 59.7, 1998, 11, []),
    "Nigeria": (37.0, 52.5, 1985, 14, [(2.0, 1998, 6, 6)]),
    "Nicaragua": (47.0, 74.3, 1982, 10, [(1.5, 1979, 2, 2)]),
    "Netherlands": (73.4, 81.1, 1995, 13, []),
    "Norway": (73.6, 81.5, 1992, 13, []),
    "Nepal": (35.2, 69.2, 1988, 10, []),
    "New Zealand": (71.2, 81.4, 1990, 13, []),
    "Oman": (42.7, 76.8, 1982, 9, []),
    "Pakistan": (45.3, 65.9, 1982, 13, []),
    "Panama": (60.9, 77.4, 1982, 12, []),
    "Peru": (48.0, 74.5, 1984, 10, []),
    "Philippines": (57.8, 68.5, 1980, 13, []),
    "Papua New Guinea": (38.5, 62.3, 1985, 13, []),
    "Poland": (67.7, 76.8, 1995, 13, []),
    "Puerto Rico": (68.1, 78.9, 1985, 13, []),
    "Korea, Dem. Rep.": (50.1, 69.9, 1978, 11, [(5.0, 1997, 3, 4)]),
    "Portugal": (62.8, 80.4, 1982, 11, []),
    "Paraguay": (63.8, 72.3, 1982, 14, []),
    "French Polynesia": (56.4, 76.2, 1982, 11, []),
    "Qatar": (61.2, 78.3, 1978, 10, []),
    "Romania": (65.6, 74.6, 1988, 15, []),
    "Russian Federation": (66.1, 71.0, 2004, 8, [(3.0, 1994, 2.5, 2.5), (2.5, 2003, 3, 3)]),
    "Rwanda": (42.3, 64.1, 1997, 11, [(27.0, 1993.8, 3, 2.5)]),
    "Saudi Arabia": (45.7, 74.1, 1978, 10, []),
    "Sudan": (48.2, 62.1, 1985, 14, []),
    "Senegal": (38.2, 63.2, 1985, 11, []),
    "Singapore": (65.7, 82.3, 1985, 13, []),
    "Solomon Islands": (49.5, 67.7, 1983, 12, []),
    "Sierra Leone": (31.6, 50.4, 2000, 12, [(4.5, 1995, 5, 5)]),
    "El Salvador": (49.7, 72.4, 1982, 10, [(5.0, 1981, 3, 4)]),
    "Somalia": (36.9, 54.6, 1988, 14, [(2.0, 1992, 3, 4)]),
    "South Sudan": (31.7, 54.8, 1988, 13, []),
    "Sao Tome and Principe": (50.5, 66.1, 1983, 13, []),
    "Suriname": (59.5, 70.8, 1982, 14, []),
    "Slovak Republic": (70.0, 76.2, 1992, 14, []),
    "Slovenia": (68.8, 80.2, 1990, 12, []),
    "Sweden": (73.1, 81.7, 1990, 14, []),
    "Swaziland": (44.2, 63.0, 1980, 11, [(17.0, 2006, 7, 14)]),
    "Syrian Arab Republic": (52.8, 74.6, 1980, 10, [(2.0, 2013, 1.5, 1.5)]),
    "Chad": (38.0, 51.2, 1988, 14, []),
    "Togo": (40.0, 56.5, 1985, 13, []),
    "Thailand": (54.7, 74.2, 1980, 12, []),
    "Tajikistan": (56.2, 69.4, 1982, 13, [(2.0, 1993, 2, 3)]),
    "Turkmenistan": (54.5, 65.2, 1982, 14, []),
    "Timor-Leste": (33.7, 67.5, 1990, 10, [(6.0, 1978, 3, 3)]),
    "Tonga": (61.5, 72.6, 1982, 13, []),
    "Trinidad and Tobago": (62.8, 70.3, 1980, 14, []),
    "Tunisia": (42.1, 75.9, 1980, 10, []),
    "Turkey": (45.4, 75.2, 1982, 13, []),
    "Tanzania": (43.7, 61.5, 1985, 13, [(3.0, 1995, 6, 6)]),
    "Uganda": (44.0, 60.0, 1995, 11, [(7.0, 1993, 9, 5)]),
    "Ukraine": (68.3, 71.2, 1985, 18, [(2.5, 1995, 4, 5)]),
    "Uruguay": (67.9, 76.9, 1985, 14, []),
    "United States": (69.8, 78.9, 1985, 14, []),
    "Uzbekistan": (59.0, 68.2, 1982, 13, []),
    "St. Vincent and the Grenadines": (58.6, 72.5, 1982, 13, []),
    "Venezuela, RB": (59.5, 74.1, 1982, 13, []),
    "Virgin Islands (U.S.)": (63.6, 79.6, 1983, 12, []),
    "Vietnam": (59.0, 75.8, 1980, 12, [(3.0, 1970, 4, 3)]),
    "Vanuatu": (52.4, 71.6, 1983, 12, []),
    "Samoa": (50.0, 73.2, 1982, 12, []),
    "Yemen, Rep.": (29.9, 63.1, 1985, 11, []),
    "South Africa": (49.0, 64.0, 1978, 12, [(12.0, 2006, 8, 10)]),
    "Congo, Dem. Rep.": (41.0, 50.0, 1985, 15, [(2.0, 1997, 4, 6)]),
    "Zambia": (45.1, 59.0, 1980, 12, [(12.0, 1998, 9, 9)]),
    "Zimbabwe": (51.5, 62.0, 1978, 11, [(17.0, 2004, 8, 8)]),
}


# World Bank name -> Gapminder name, where they differ.
GAPMINDER_NAMES = {
    "Congo, Dem. Rep.": "Congo, Dem. Rep.",
    "Congo, Rep.": "Congo, Rep.",
    "Cote d'Ivoire": "Cote d'Ivoire",
    "Egypt, Arab Rep.": "Egypt",
    "Gambia, The": "Gambia",
    "Hong Kong SAR, China": "Hong Kong, China",
    "Iran, Islamic Rep.": "Iran",
    "Korea, Dem. Rep.": "Korea, Dem. Rep.",
    "Korea, Rep.": "Korea, Rep.",
    "Kyrgyz Republic": "Kyrgyzstan",
    "Lao PDR": "Laos",
    "Macedonia, FYR": "Macedonia",
    "Myanmar": "Myanmar",
    "Russian Federation": "Russia",
    "Slovak Republic": "Slovak Republic",
    "Syrian Arab Republic": "Syria",
    "Venezuela, RB": "Venezuela",
    "Vietnam": "Vietnam",
    "Yemen, Rep.": "Yemen, Rep.",
}


# Gapminder's five-yearly averages diverge from the World Development
# Indicators family for a handful of crisis-era series (depth and timing of
# the southern-Africa HIV collapse, the Rwandan recovery, the Khmer Rouge
# trough, the 2010 Haiti earthquake, which postdates the excerpt).  These
# series use WDI-style anchor points instead, interpolated the same way.
WDI_ANCHORS = {
    "Lesotho": [(1960, 46.5), (1970, 49.5), (1980, 53.2), (1990, 59.4),
                (1995, 58.0), (2000, 51.5), (2005, 43.5), (2009, 45.5), (2013, 49.3)],
    "Swaziland": [(1960, 44.2), (1970, 48.6), (1980, 53.5), (1990, 58.5),
                  (1995, 57.0), (2000, 50.0), (2005, 45.5), (2013, 49.0)],
    "Zimbabwe": [(1960, 51.5), (1970, 55.0), (1980, 59.2), (1986, 61.4),
                 (1990, 60.0), (1995, 52.5), (2000, 46.5), (2004, 44.1),
                 (2008, 48.5), (2011, 54.0), (2013, 58.5)],
    "South Africa": [(1960, 49.0), (1970, 53.4), (1980, 57.2), (1990, 61.9),
                     (1995, 61.4), (2000, 55.9), (2005, 52.0), (2009, 54.0),
                     (2013, 56.7)],
    "Rwanda": [(1960, 42.3), (1970, 44.5), (1980, 46.5), (1990, 48.0),
               (1993, 26.7), (1997, 40.0), (2000, 46.6), (2005, 55.0),
               (2009, 60.5), (2013, 64.1)],
    "Cambodia": [(1960, 41.2), (1970, 42.0), (1975, 30.0), (1977, 19.6),
                 (1980, 35.0), (1985, 49.5), (1990, 53.5), (2000, 58.0),
                 (2007, 64.0), (2013, 68.2)],
    "Haiti": [(1960, 42.1), (1970, 47.0), (1980, 50.8), (1990, 54.8),
              (2000, 57.6), (2008, 60.8), (2009, 61.1), (2010, 32.2),
              (2011, 61.8), (2013, 62.4)],
}


def load_gapminder():
    """Real five-yearly life expectancy per country, or None without plotly."""
    try:
        import plotly.express as px
    except ImportError:
        return {}
    frame = px.data.gapminder()
    table = {}
    for country, group in frame.groupby("country"):
        group = group.sort_values("year")
        table[str(country)] = (
            group["year"].to_numpy(dtype=float),
            group["lifeExp"].to_numpy(dtype=float),
        )
    return table


def leb_from_gapminder(sample_years, sample_values, anchor_2013):
    """Annual 1960-2013 curve through real five-yearly points.

    Shape-preserving interpolation through the observed points plus a 2013
    anchor; the pre-1960 points steer the boundary slope.
    """
    from scipy.interpolate import PchipInterpolator

    knots_t = np.append(sample_years, 2013.0)
    knots_v = np.append(sample_values, anchor_2013)
    interp = PchipInterpolator(knots_t, knots_v)
    return interp(np.asarray(YEARS, dtype=float))


def logistic(x):
    return 1.0 / (1.0 + np.exp(-x))


def leb_curve(years, start, end, mid, width, dips):
    t = np.asarray(years, dtype=float)
    s = logistic((t - mid) / width)
    s0 = logistic((1960.0 - mid) / width)
    s1 = logistic((2013.0 - mid) / width)
    base = start + (end - start) * (s - s0) / (s1 - s0)
    for amp, center, w_before, w_after in dips:
        w = np.where(t < center, w_before, w_after)
        base = base - amp * np.exp(-(((t - center) / w) ** 2))
    return base


def load_tfr():
    import statsmodels.api as sm

    data = sm.datasets.fertility.load_pandas().data
    cols = [str(y) for y in YEARS]
    table = {}
    for _, row in data.iterrows():
        name = row["Country Name"]
        if name in AGGREGATES:
            continue
        vals = np.array([row[c] for c in cols], dtype=float)
        if np.isnan(vals[:52]).sum() > 6:  # 1960-2011 coverage filter
            continue
        # extend the 2012-2013 tail by the recent trend (vintage gap)
        observed = np.flatnonzero(~np.isnan(vals))
        last = observed[-1]
        if last < len(YEARS) - 1:
            recent = observed[observed >= last - 4]
            slope = np.polyfit(recent.astype(float), vals[recent], 1)[0]
            for j in range(last + 1, len(YEARS)):
                vals[j] = max(0.8, vals[last] + slope * (j - last))
        table[name] = vals
    return table


def write_wide(path, table, fmt="%.4f"):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["country"] + [str(y) for y in YEARS])
        for name in sorted(table):
            row = [name]
            for v in table[name]:
                row.append("" if np.isnan(v) else fmt % v)
            writer.writerow(row)


def main():
    out_dir = os.path.join(os.path.dirname(__file__), "..", "data")
    tfr = load_tfr()
    missing_params = sorted(set(tfr) - set(LEB_PARAMS))
    if missing_params:
        raise SystemExit(f"no LEB parameters for: {missing_params}")
    extra = sorted(set(LEB_PARAMS) - set(tfr))
    if extra:
        raise SystemExit(f"LEB parameters for countries without TFR: {extra}")
    gap = load_gapminder()
    leb = {}
    n_real = 0
    for name in tfr:
        if name in WDI_ANCHORS:
            from scipy.interpolate import PchipInterpolator

            pts = WDI_ANCHORS[name]
            interp = PchipInterpolator([p[0] for p in pts], [p[1] for p in pts])
            leb[name] = interp(np.asarray(YEARS, dtype=float))
            continue
        curve = leb_curve(YEARS, *LEB_PARAMS[name][:4], LEB_PARAMS[name][4])
        gname = GAPMINDER_NAMES.get(name, name)
        if gname in gap:
            years_obs, values_obs = gap[gname]
            curve = leb_from_gapminder(years_obs, values_obs, curve[-1])
            n_real += 1
        leb[name] = curve
    write_wide(os.path.join(out_dir, "world_tfr.csv"), tfr)
    write_wide(os.path.join(out_dir, "world_leb.csv"), leb, fmt="%.2f")
    print(
        f"wrote {len(tfr)} countries x {len(YEARS)} years "
        f"({n_real} life-expectancy series from Gapminder)"
    )


if __name__ == "__main__":
    main()
