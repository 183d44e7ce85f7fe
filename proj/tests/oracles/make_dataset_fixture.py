"""Writes fixtures/dataset_30.csv: 10 rows per rock class, documented header."""
import csv
import pathlib

CLASSES = [("Ígnea", "igneous"), ("Sedimentaria", "sedimentary"), ("Metamórfica", "metamorphic")]
GEOLOGY = {
    "igneous": "Flujo de lava andesítica",
    "sedimentary": "Secuencia de areniscas y lutitas",
    "metamorphic": "Esquistos del basamento",
}
COLORS = ["Gris oscuro", "Gris claro", "Pardo rojizo", "Verde grisáceo", "Beige"]
STRUCTURES = ["Diaclasas columnares", "Estratificación", "Foliación", "Fallas menores", "Vetillas de calcita"]
QUALITY = ["Buena", "Media", "Mala", "Muy buena"]

out = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "dataset_30.csv"
with out.open("w", newline="", encoding="utf-8") as f:
    w = csv.writer(f, lineterminator="\n")
    w.writerow(["id", "rock_type", "geology", "color", "main_structures", "mass_quality", "joint_description"])
    for k, (name, rt) in enumerate(CLASSES):
        for i in range(1, 11):
            n = k * 10 + i
            w.writerow([
                f"{name} {i}",
                rt,
                GEOLOGY[rt],
                COLORS[n % len(COLORS)],
                STRUCTURES[n % len(STRUCTURES)],
                QUALITY[n % len(QUALITY)],
                f"{2 + n % 3} familias, espaciado de {10 * (1 + n % 4)} cm, juntas {'abiertas' if n % 2 else 'cerradas'}",
            ])
