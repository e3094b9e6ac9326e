# ====== Code Summary ======
# Debug dump of a MilpModel in CPLEX LP text format, for cross-checking against external solvers.

# ====== Standard Library Imports ======
import math
import re

# ====== Internal Project Imports ======
from milp.models import MilpModel

_UNSAFE = re.compile(r"[^A-Za-z0-9_.]")


def _name(raw: str) -> str:
    cleaned = _UNSAFE.sub("_", raw.replace("[", "(").replace("]", ")")).strip("_")
    return cleaned if cleaned and not cleaned[0].isdigit() else f"v_{cleaned}"


def _expression(coefficients, names) -> str:
    terms = []
    for col, value in coefficients:
        sign = "-" if value < 0 else "+"
        terms.append(f"{sign} {abs(value):.12g} {names[col]}")
    if not terms:
        return "0 " + names[0] if names else "0"
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else text


def lp_text(model: MilpModel) -> str:
    """
    Renders the model in CPLEX LP format.

    Args:
        model (MilpModel): Model to render.

    Returns:
        str: LP text (objective constant emitted as a comment).
    """
    lp = model.lp
    names = [_name(name) for name in model.var_names]
    lines = ["\\ generated by gridmga"]
    if lp.c0:
        lines.append(f"\\ objective constant {lp.c0:.12g}")
    lines.append("Minimize")
    objective = [(col, value) for col, value in enumerate(lp.c) if value != 0]
    lines.append(f" obj: {_expression(objective, names)}")
    lines.append("Subject To")

    A = lp.A.tocsr()
    for row in range(lp.n_rows):
        start, end = A.indptr[row], A.indptr[row + 1]
        expr = _expression(zip(A.indices[start:end], A.data[start:end]), names)
        lower, upper = lp.row_lower[row], lp.row_upper[row]
        if lower == upper:
            lines.append(f" r{row}: {expr} = {upper:.12g}")
            continue
        if math.isfinite(upper):
            lines.append(f" r{row}_u: {expr} <= {upper:.12g}")
        if math.isfinite(lower):
            lines.append(f" r{row}_l: {expr} >= {lower:.12g}")

    lines.append("Bounds")
    binaries = set(model.binary_vars)
    for col, name in enumerate(names):
        lower, upper = lp.var_lower[col], lp.var_upper[col]
        lo = "-inf" if math.isinf(lower) else f"{lower:.12g}"
        hi = "+inf" if math.isinf(upper) else f"{upper:.12g}"
        if col in binaries and lower == 0 and upper == 1:
            continue
        lines.append(f" {lo} <= {name} <= {hi}")

    if binaries:
        lines.append("Binary")
        lines.extend(f" {names[col]}" for col in sorted(binaries))
    lines.append("End")
    return "\n".join(lines) + "\n"
