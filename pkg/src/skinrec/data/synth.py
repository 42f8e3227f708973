"""Deterministic synthetic catalog generation at the full dataset scale.

The public catalog behind the bundled sample has 1,472 unique items; this
generator produces a stand-in of any size with the same schema, realistic
ingredient overlap (a shared base pool plus category-specific actives and
a long tail) and varied suitability flags, so scale tests do not depend on
network access to the original source.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Union

import numpy as np

FULL_CATALOG_SIZE = 1472

_BASE_POOL = [
    "Water", "Glycerin", "Butylene Glycol", "Phenoxyethanol", "Dimethicone",
    "Squalane", "Sodium Hyaluronate", "Citric Acid", "Panthenol", "Carbomer",
    "Cetearyl Alcohol", "Propanediol", "Xanthan Gum", "Tocopheryl Acetate",
    "Sodium Benzoate", "Allantoin", "Caprylic/Capric Triglyceride", "Betaine",
    "Stearic Acid", "Glyceryl Stearate", "Sodium Chloride", "Disodium EDTA",
    "Potassium Sorbate", "Ethylhexylglycerin", "Alcohol Denat", "Silica",
    "Sodium Hydroxide", "Fragrance", "Limonene", "Linalool",
]

_CATEGORY_POOLS = {
    "Cleanser": [
        "Cocamidopropyl Betaine", "Sodium Laureth Sulfate", "Coco-Glucoside",
        "Sodium Cocoyl Glutamate", "Lauric Acid", "Myristic Acid",
        "Potassium Hydroxide", "Sodium Lauroamphoacetate", "Decyl Glucoside",
        "Sucrose", "Salicylic Acid", "Willow Bark Extract", "Rose Water",
        "Chamomile Flower Extract", "Tea Tree Leaf Oil", "Sodium Cocoyl Isethionate",
    ],
    "Moisturizer": [
        "Shea Butter", "Petrolatum", "Mineral Oil", "Cholesterol", "Ceramide NP",
        "Urea", "Trehalose", "Jojoba Seed Oil", "Sweet Almond Oil", "Beeswax",
        "Isohexadecane", "Dicaprylyl Carbonate", "Polyglyceryl-3 Methylglucose Distearate",
        "Sodium PCA", "Oat Kernel Extract", "Madecassoside",
    ],
    "Treatment": [
        "Niacinamide", "Retinol", "Ascorbic Acid", "Glycolic Acid", "Lactic Acid",
        "Salicylic Acid", "Azelaic Acid", "Arbutin", "Ferulic Acid", "Resveratrol",
        "Bakuchiol", "Licorice Root Extract", "Centella Asiatica Extract",
        "Sodium Ascorbyl Phosphate", "Tranexamic Acid", "Peptide Complex",
    ],
    "Mask": [
        "Kaolin", "Bentonite", "Activated Charcoal", "Sea Silt", "Colloidal Oatmeal",
        "Honey Extract", "Algae Extract", "Rose Flower", "Cucumber Fruit Extract",
        "Aloe Leaf Juice", "Pumpkin Seed Extract", "Menthol", "Peppermint Oil",
        "Witch Hazel Extract", "Papaya Fruit Extract", "Yogurt Powder",
    ],
    "Sunscreen": [
        "Zinc Oxide", "Titanium Dioxide", "Avobenzone", "Homosalate", "Octisalate",
        "Octocrylene", "Octinoxate", "Isododecane", "Isoamyl Laurate",
        "Diisopropyl Adipate", "Polyester-8", "Caprylyl Methicone",
        "Green Tea Extract", "Rice Bran Oil", "Sunflower Seed Oil", "VP/Hexadecene Copolymer",
    ],
}

_BOTANICALS = [
    "Lavender", "Rosemary", "Ginseng", "Green Tea", "Chamomile", "Calendula",
    "Gotu Kola", "Mugwort", "Rice", "Soybean", "Avocado", "Olive", "Argan",
    "Camellia", "Lotus", "Bamboo", "Ginger", "Turmeric", "Pomegranate", "Fig",
    "Apricot", "Peach", "Blueberry", "Cranberry", "Grapefruit", "Yuzu",
    "Hibiscus", "Peony", "Magnolia", "Edelweiss", "Sea Buckthorn", "Kelp",
    "Spirulina", "Matcha", "Oat", "Barley", "Quinoa", "Chia", "Moringa", "Neem",
]
_BOTANICAL_PARTS = ["Leaf Extract", "Root Extract", "Seed Oil", "Flower Water", "Fruit Extract"]

_BRAND_HEADS = [
    "AURA", "VELV", "DERM", "LUMI", "BOTAN", "HYDRA", "PURE", "SKIN", "GLOW",
    "CLAR", "NOVA", "SOL", "MAR", "FLORA", "VITA", "ZEN", "ALBA", "CELL",
    "EVER", "MILA", "ORLA", "PETAL", "SILK", "TERRA", "URBAN", "VERDE",
]
_BRAND_TAILS = ["SKIN", "LAB", "IQUE", "ELLE", "ISTRY", "A", "EA", "ICA", "ON", "IS", "EAU"]

_NAME_ADJECTIVES = [
    "Hydrating", "Clarifying", "Radiance", "Soothing", "Balancing", "Renewing",
    "Brightening", "Calming", "Restoring", "Purifying", "Nourishing", "Velvet",
    "Dewy", "Ultra", "Daily", "Gentle", "Intense", "Botanical", "Advanced", "Silky",
]
_NAME_NOUNS = [
    "Rose", "Lotus", "Pearl", "Rice", "Honey", "Aloe", "Cica", "Marine",
    "Vitamin", "Herbal", "Cloud", "Water", "Amber", "Citrus", "Bloom", "Moss",
]
_NAME_FORMS = {
    "Cleanser": ["Foam Cleanser", "Gel Cleanser", "Cleansing Balm", "Micellar Wash", "Cleansing Oil"],
    "Moisturizer": ["Cream", "Gel Cream", "Moisture Lotion", "Hydra Balm", "Water Cream"],
    "Treatment": ["Serum", "Ampoule", "Night Treatment", "Concentrate", "Booster"],
    "Mask": ["Clay Mask", "Sheet Mask", "Sleeping Mask", "Peel Mask", "Rubber Mask"],
    "Sunscreen": ["SPF 30 Lotion", "SPF 40 Fluid", "SPF 50 Milk", "Mineral Sunscreen", "Sun Stick"],
}

_CATEGORY_WEIGHTS = {
    "Moisturizer": 0.30,
    "Cleanser": 0.20,
    "Treatment": 0.25,
    "Mask": 0.15,
    "Sunscreen": 0.10,
}
_ISSUE_CHOICES = ["Acne", "ClearSkin", "Pigmentation", "Wrinkles", ""]
_ISSUE_WEIGHTS = [0.28, 0.12, 0.28, 0.24, 0.08]


def generate_catalog_rows(n: int = FULL_CATALOG_SIZE, seed: int = 20240101) -> list[list[str]]:
    """Generate ``n`` unique catalog rows (without header), deterministic per seed."""
    rng = np.random.default_rng(seed)
    categories = list(_CATEGORY_WEIGHTS)
    cat_probs = np.array([_CATEGORY_WEIGHTS[c] for c in categories])
    brands = sorted({h + t for h in _BRAND_HEADS for t in _BRAND_TAILS})
    tail_pool = [f"{b} {p}" for b in _BOTANICALS for p in _BOTANICAL_PARTS]

    rows: list[list[str]] = []
    seen: set[tuple[str, str, str]] = set()
    product_id = 1
    while len(rows) < n:
        category = categories[int(rng.choice(len(categories), p=cat_probs))]
        brand = brands[int(rng.integers(len(brands)))]
        name = " ".join(
            [
                _NAME_ADJECTIVES[int(rng.integers(len(_NAME_ADJECTIVES)))],
                _NAME_NOUNS[int(rng.integers(len(_NAME_NOUNS)))],
                _NAME_FORMS[category][int(rng.integers(len(_NAME_FORMS[category])))],
            ]
        )
        triple = (brand, name, category)
        if triple in seen:
            continue
        seen.add(triple)

        n_base = int(rng.integers(3, 7))
        n_cat = int(rng.integers(3, 9))
        n_tail = int(rng.integers(1, 5))
        base = rng.choice(len(_BASE_POOL), size=n_base, replace=False, p=None)
        cat_pool = _CATEGORY_POOLS[category]
        cat_picks = rng.choice(len(cat_pool), size=min(n_cat, len(cat_pool)), replace=False)
        tail_picks = rng.choice(len(tail_pool), size=n_tail, replace=False)
        ingredients = (
            [_BASE_POOL[i] for i in base]
            + [cat_pool[i] for i in cat_picks]
            + [tail_pool[i] for i in tail_picks]
        )

        issue = rng.choice(_ISSUE_CHOICES, p=_ISSUE_WEIGHTS)
        flags = (rng.random(5) < 0.62).astype(int)
        if flags.sum() == 0 and rng.random() < 0.9:
            flags[int(rng.integers(5))] = 1
        price = "" if rng.random() < 0.05 else f"{float(rng.uniform(9, 190)):.1f}"
        rank = f"{float(rng.uniform(2.5, 5.0)):.1f}"

        rows.append(
            [
                str(product_id),
                category,
                str(issue),
                brand,
                name,
                ", ".join(ingredients),
                *(str(int(f)) for f in flags),
                price,
                rank,
            ]
        )
        product_id += 1
    return rows


def write_catalog_csv(
    path: Union[str, Path], n: int = FULL_CATALOG_SIZE, seed: int = 20240101
) -> Path:
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["id", "Label", "Issue", "brand", "name", "ingredients",
             "Combination", "Dry", "Normal", "Oily", "Sensitive", "price", "rank"]
        )
        writer.writerows(generate_catalog_rows(n, seed))
    return path
