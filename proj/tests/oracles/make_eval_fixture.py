"""Writes the synthetic 30-pair evaluation fixture (10 per rock class).

Candidate texts are perturbed copies of the reference descriptions (word
swaps, drops and substitutions) so scores spread across the [0, 1] range.
Run once; the CSV is committed and frozen.
"""
import csv
import random
import sys

rng = random.Random(20250630)

colors = ["gris claro", "gris oscuro", "pardo rojizo", "verde oliva", "blanco amarillento", "negro"]
structures = ["estratificación paralela", "foliación marcada", "diaclasas subverticales",
              "pliegues abiertos", "vetillas de cuarzo", "laminación cruzada"]
qualities = ["buena", "media", "mala", "muy buena"]
joints = ["tres familias de juntas", "dos familias de diaclasas", "juntas espaciadas y persistentes",
          "fracturas abiertas con relleno arcilloso"]
rocks = {
    "Ígnea": ["andesita", "basalto", "granito", "diorita", "riolita"],
    "Sedimentaria": ["arenisca", "lutita", "caliza", "conglomerado", "limolita"],
    "Metamórfica": ["esquisto", "gneis", "cuarcita", "pizarra", "mármol"],
}
fillers = ["además", "en general", "localmente", "hacia el techo", "en la base", "con frecuencia"]


def reference(cls):
    rock = rng.choice(rocks[cls])
    return (f"Afloramiento de {rock} de color {rng.choice(colors)}, con {rng.choice(structures)} "
            f"y {rng.choice(joints)}. La calidad del macizo rocoso es {rng.choice(qualities)}; "
            f"{rng.choice(fillers)} se observa meteorización superficial moderada y bloques sueltos.")


def perturb(text, strength):
    words = text.split(" ")
    out = []
    for w in words:
        r = rng.random()
        if r < strength * 0.35:
            continue
        if r < strength * 0.7:
            out.append(rng.choice(fillers + colors + ["roca", "macizo", "talud", "juntas"]))
            continue
        out.append(w)
    if len(out) > 3 and rng.random() < strength:
        i = rng.randrange(len(out) - 1)
        out[i], out[i + 1] = out[i + 1], out[i]
    return " ".join(out)


def main(path):
    rows = []
    for cls in ["Ígnea", "Sedimentaria", "Metamórfica"]:
        for n in range(1, 11):
            ref = reference(cls)
            cand = perturb(ref, rng.uniform(0.15, 0.85))
            rows.append({"id": f"{cls} {n}", "category": cls, "candidate": cand, "reference": ref})
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.DictWriter(f, fieldnames=["id", "category", "candidate", "reference"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


if __name__ == "__main__":
    main(sys.argv[1])
