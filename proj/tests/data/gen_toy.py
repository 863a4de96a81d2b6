#!/usr/bin/env python3
# Copyright 2026 The SPL Authors.
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
"""Regenerates the toy fixtures in this directory. Output is deterministic."""

import json
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))

EN_VALUES = {
    "cuisine": ["burger", "sushi", "italian food", "thai", "pizza", "ramen", "tacos",
                "vegan", "seafood", "steak"],
    "location": ["Woodland Pond", "downtown", "Palo Alto", "Main Street", "the airport",
                 "Union Square", "Central Park", "the beach"],
    "hotel_name": ["Grand Plaza", "Seaside Inn", "Hilton Garden", "Lakeview Lodge"],
    "restaurant_name": ["Blue Moon", "Golden Dragon", "Olive Garden", "Red Lobster"],
}

IT_VALUES = {
    "cuisine": ["pizza napoletana", "lasagna al forno", "focaccia genovese", "risotto ai funghi",
                "pesce fritto", "pasta fresca", "gelato artigianale", "cucina romana",
                "carne alla griglia", "frutti di mare", "cucina siciliana", "pane caldo"],
    "location": ["Via Del Corso", "Lago di Como", "Piazza Navona", "Mercerie", "Ponte Vecchio",
                 "Stazione Centrale", "Porta Nuova", "Isola Bella", "Monte Bianco", "Colle Oppio",
                 "Campo dei Fiori"],
    "hotel_name": ["Albergo del Sole", "Hotel Stella", "Locanda del Lago", "Villa dei Fiori",
                   "Palazzo Reale", "Residenza Aurora", "Casa Bianca", "Torre Antica",
                   "Pensione Mare", "Grand Hotel Roma"],
    "restaurant_name": ["Trattoria da Mario", "Osteria del Ponte", "Il Gambero Rosso", "La Buca",
                        "Antica Pizzeria", "Cantina Verde", "Al Vecchio Forno", "Bottega Nera",
                        "Taverna Blu", "Enoteca Rossi"],
}

EN_IT = {
    "find": "trova", "show": "mostra", "me": "mi", "i": "io", "am": "sono",
    "looking": "cercando", "for": "per", "search": "cerca", "want": "voglio", "can": "puoi",
    "you": "tu", "please": "per favore", "look": "cerca", "up": "", "get": "prendi",
    "recommend": "consiglia", "a": "un", "place": "posto", "near": "vicino a",
    "restaurants": "ristoranti", "restaurant": "ristorante", "in": "a", "serving": "che serve",
    "open": "aperto", "at": "alle", "with": "con", "stars": "stelle", "the": "il",
    "best": "migliore", "cheap": "economico", "food": "cibo", "hotels": "alberghi",
    "hotel": "albergo", "room": "camera", "quiet": "tranquillo", "close": "vicino",
    "to": "a", "tonight": "stasera", "check-in": "check-in", "burger": "hamburger",
    "italian": "italiano", "thai": "tailandese", "vegan": "vegano", "seafood": "frutti di mare",
    "steak": "bistecca", "downtown": "centro", "airport": "aeroporto", "beach": "spiaggia",
    "street": "via", "square": "piazza", "park": "parco", "central": "centrale",
}

IT_EN = {
    "trova": "find", "cerco": "i am looking for", "mostrami": "show me", "voglio": "i want",
    "cerca": "search", "un": "a", "una": "a", "ristorante": "restaurant",
    "ristoranti": "restaurants", "di": "of", "vicino": "near", "a": "in", "albergo": "hotel",
    "camera": "room", "al": "at the", "con": "with", "per": "for", "stasera": "tonight",
    "napoletana": "neapolitan", "lasagna": "lasagne", "forno": "oven", "genovese": "genoese",
    "risotto": "rice", "ai": "with", "funghi": "mushrooms", "pesce": "fish", "fritto": "fried",
    "pasta": "noodles", "fresca": "fresh", "gelato": "ice cream", "artigianale": "artisanal",
    "cucina": "cuisine", "romana": "roman", "carne": "meat", "alla": "on the",
    "griglia": "grill", "frutti": "fruits", "mare": "sea", "siciliana": "sicilian",
    "pane": "bread", "caldo": "warm", "via": "street", "del": "of the", "lago": "lake",
    "piazza": "square", "mercerie": "haberdashery", "ponte": "bridge", "vecchio": "old",
    "stazione": "station", "centrale": "central", "porta": "gate", "nuova": "new",
    "isola": "island", "bella": "beautiful", "monte": "mount", "bianco": "white",
    "colle": "hill", "oppio": "opium", "campo": "field", "dei": "of the", "fiori": "flowers",
    "sole": "sun", "hotel": "inn", "stella": "star", "locanda": "inn", "villa": "house",
    "palazzo": "palace", "reale": "royal", "residenza": "residence", "aurora": "dawn",
    "casa": "home", "bianca": "white", "torre": "tower", "antica": "ancient",
    "pensione": "guesthouse", "grand": "great", "roma": "rome", "trattoria": "eatery",
    "da": "by", "mario": "mario's", "osteria": "tavern", "il": "the", "gambero": "shrimp",
    "rosso": "red", "la": "the", "buca": "hole", "pizzeria": "pizza shop", "cantina": "cellar",
    "verde": "green", "bottega": "shop", "nera": "black", "taverna": "tavern", "blu": "blue",
    "enoteca": "wine bar", "rossi": "reds",
}

EN_PREFIXES = ["find", "show me", "i am looking for", "search for", "i want", "can you find",
               "please find", "look up", "get me", "recommend"]
EN_SUFFIXES = ["", " please", " tonight"]

# (domain, template, [(slot, lf key)]) ; slots in utterance order.
EN_TEMPLATES = [
    ("restaurant", "a {cuisine} place near {location}", [("cuisine", "cuisine"), ("location", "geo")]),
    ("restaurant", "{cuisine} restaurants in {location}", [("cuisine", "cuisine"), ("location", "geo")]),
    ("restaurant", "a restaurant serving {cuisine}", [("cuisine", "cuisine")]),
    ("restaurant", "a {cuisine} restaurant open at {TIME}", [("cuisine", "cuisine"), ("TIME", "open_at")]),
    ("restaurant", "restaurants near {location} with {NUMBER} stars", [("location", "geo"), ("NUMBER", "rating")]),
    ("restaurant", "{restaurant_name} in {location}", [("restaurant_name", "id"), ("location", "geo")]),
    ("restaurant", "the best {cuisine} in {location}", [("cuisine", "cuisine"), ("location", "geo")]),
    ("restaurant", "cheap {cuisine} food", [("cuisine", "cuisine")]),
    ("hotel", "hotels near {location}", [("location", "geo")]),
    ("hotel", "a room at {hotel_name}", [("hotel_name", "id")]),
    ("hotel", "{hotel_name} near {location}", [("hotel_name", "id"), ("location", "geo")]),
    ("hotel", "hotels in {location} with {NUMBER} stars", [("location", "geo"), ("NUMBER", "rating")]),
    ("hotel", "a hotel with check-in at {TIME}", [("TIME", "checkin")]),
    ("hotel", "a quiet hotel close to {location}", [("location", "geo")]),
]

IT_PREFIXES = ["trova", "cerco", "mostrami", "voglio", "cerca"]
IT_TEMPLATES = [
    ("restaurant", "un ristorante di {cuisine} vicino a {location}", [("cuisine", "cuisine"), ("location", "geo")]),
    ("restaurant", "{cuisine} a {location}", [("cuisine", "cuisine"), ("location", "geo")]),
    ("hotel", "un albergo vicino a {location}", [("location", "geo")]),
    ("hotel", "una camera al {hotel_name}", [("hotel_name", "id")]),
    ("restaurant", "{restaurant_name} a {location}", [("restaurant_name", "id"), ("location", "geo")]),
    ("restaurant", "ristoranti con {cuisine} per stasera", [("cuisine", "cuisine")]),
]


def render(domain, prefix, template, slots, suffix, values, rng):
    """Builds one example dict with byte-offset spans."""
    text = prefix + " " if prefix else ""
    spans = []
    lf = ["@" + domain, "filter"]
    pieces = template.replace("}", "{").split("{")
    chosen = {}
    for i, piece in enumerate(pieces):
        if i % 2 == 0:
            text += piece
            continue
        slot = piece
        if slot in ("TIME", "NUMBER"):
            value = slot + "_0"
            placeholder = True
        else:
            value = rng.choice(values[slot])
            placeholder = False
        chosen[slot] = value
        start = len(text.encode("utf-8"))
        text += value
        spans.append({"start": start, "end": len(text.encode("utf-8")), "param_type": slot,
                      "value": value, "is_placeholder": placeholder})
    text += suffix
    for n, (slot, key) in enumerate(slots):
        if n:
            lf.append("and")
        lf += [key, "=="]
        if slot in ("TIME", "NUMBER"):
            lf.append(chosen[slot])
        else:
            lf += ['"'] + chosen[slot].split() + ['"']
    return text, " ".join(lf), spans


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


def dataset(prefix_list, suffix_list, templates, values, lang, provenance, id_prefix, count,
            duplicates, rng):
    combos = [(p, t, s) for p in prefix_list for t in templates for s in suffix_list]
    rng.shuffle(combos)
    picked = combos[:count - duplicates] + combos[:duplicates]
    out = []
    for i, (prefix, (domain, template, slots), suffix) in enumerate(picked):
        text, lf, spans = render(domain, prefix, template, slots, suffix, values, rng)
        out.append({"id": "%s%03d" % (id_prefix, i), "lang": lang, "utterance": text,
                    "logical_form": lf, "spans": spans, "provenance": provenance})
    return out


def main():
    rng = random.Random(20210)
    # 200 records; the last 4 repeat earlier templates with fresh values, so
    # masked dedup removes exactly 4.
    write_jsonl(os.path.join(HERE, "toy_en.jsonl"),
                dataset(EN_PREFIXES, EN_SUFFIXES, EN_TEMPLATES, EN_VALUES, "en", "synthesized",
                        "en", 200, 4, rng))
    write_jsonl(os.path.join(HERE, "toy_it_test.jsonl"),
                dataset(IT_PREFIXES, [""], IT_TEMPLATES, IT_VALUES, "it", "human_translated",
                        "it-test-", 30, 0, rng))
    write_jsonl(os.path.join(HERE, "toy_it_human_dev.jsonl"),
                dataset(IT_PREFIXES, [""], IT_TEMPLATES, IT_VALUES, "it", "human_translated",
                        "hd", 30, 0, rng))
    write_jsonl(os.path.join(HERE, "toy_it_machine_dev.jsonl"),
                dataset(IT_PREFIXES, [""], IT_TEMPLATES, IT_VALUES, "it", "machine_translated",
                        "md", 30, 0, rng))
    ontology = {"lang": "it", "entries": {k: [{"text": v, "weight": 1.0} for v in vs]
                                          for k, vs in IT_VALUES.items()}}
    with open(os.path.join(HERE, "ontology_it.json"), "w", encoding="utf-8") as f:
        json.dump(ontology, f, ensure_ascii=False, indent=1)
        f.write("\n")
    for name, table in (("dict_en_it.tsv", EN_IT), ("dict_it_en.tsv", IT_EN)):
        with open(os.path.join(HERE, name), "w", encoding="utf-8") as f:
            for k in sorted(table):
                f.write("%s\t%s\n" % (k, table[k]))


if __name__ == "__main__":
    main()
