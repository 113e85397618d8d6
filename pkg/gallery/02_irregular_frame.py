"""The 3-2-4 frame: bays of 3, 2 and 4 stories.

Shows the count rules for an irregular frame, the ETABS story view of the
same model, and how the verifier reports a deliberately broken script.
"""
from pathlib import Path

import frameforge as ff

HERE = Path(__file__).resolve().parent

model = ff.build_model(ff.parse_problem((HERE / "inputs" / "irregular_324.frame").read_text()))
columns = sum(e.kind == "column" for e in model.elements)
print(f"nodes {len(model.nodes)}, columns {columns}, girders {len(model.elements) - columns}")

# ETABS thinks in stories: plan points and line templates replicated per level.
stories = ff.to_story_model(model)
for level in stories.story_levels:
    lines = sorted(o.template for o in stories.line_objects if o.story == level.name)
    print(f"{level.name:>7} @ {level.elevation:5.2f}: {' '.join(lines) or '(supports only)'}")

# Drop one column from the Tcl script and verify it against the IR.
last_column = max(e.id for e in model.elements if e.kind == "column")
tcl = ff.emit(model, "opensees_tcl").text
broken = "\n".join(ln for ln in tcl.splitlines()
                   if not ln.startswith(f"element elasticBeamColumn {last_column} ")) + "\n"
print(ff.models_equivalent(model, ff.parse_script(broken, "opensees_tcl")))
