# ====== Code Summary ======
# Incremental construction of a `MilpModel`: named variable blocks, sparse constraint rows given
# as {index: coefficient} maps, and a linear objective. Formulations use it instead of assembling
# matrices by hand.

# ====== Standard Library Imports ======
import math

# ====== Third-Party Library Imports ======
import numpy as np
from scipy import sparse

# ====== Internal Project Imports ======
from milp.exceptions import MalformedProgramError
from milp.models import LinearProgram, MilpModel


class MilpBuilder:
    """
    Accumulates variables, rows and objective terms, then freezes them into a MilpModel.
    """

    def __init__(self):
        self._names: list[str] = []
        self._lower: list[float] = []
        self._upper: list[float] = []
        self._cost: list[float] = []
        self._binary: list[int] = []
        self._groups: dict[str, list[int]] = {}
        self._rows: list[int] = []
        self._cols: list[int] = []
        self._vals: list[float] = []
        self._row_lower: list[float] = []
        self._row_upper: list[float] = []
        self._row_groups: dict[str, list[int]] = {}
        self.c0 = 0.0

    @property
    def n_vars(self) -> int:
        return len(self._names)

    @property
    def n_rows(self) -> int:
        return len(self._row_lower)

    def add_var(
            self,
            name: str,
            lower: float = 0.0,
            upper: float = math.inf,
            cost: float = 0.0,
            binary: bool = False,
            group: str | None = None,
    ) -> int:
        """Adds one variable and returns its index."""
        if lower > upper:
            raise MalformedProgramError(f"variable {name}: lower bound {lower} exceeds upper bound {upper}")
        index = len(self._names)
        self._names.append(name)
        self._lower.append(float(lower))
        self._upper.append(float(upper))
        self._cost.append(float(cost))
        if binary:
            if lower < 0 or upper > 1:
                raise MalformedProgramError(f"binary variable {name} must have bounds within [0, 1]")
            self._binary.append(index)
        if group is not None:
            self._groups.setdefault(group, []).append(index)
        return index

    def add_row(
            self,
            coefficients: dict[int, float],
            lower: float = -math.inf,
            upper: float = math.inf,
            group: str | None = None,
    ) -> int:
        """Adds lower ≤ Σ coefficient·x ≤ upper and returns the row index."""
        if lower > upper:
            raise MalformedProgramError(f"row lower bound {lower} exceeds upper bound {upper}")
        row = len(self._row_lower)
        for col, value in coefficients.items():
            if col < 0 or col >= self.n_vars:
                raise MalformedProgramError(f"row {row} references unknown variable {col}")
            if value != 0:
                self._rows.append(row)
                self._cols.append(col)
                self._vals.append(float(value))
        self._row_lower.append(float(lower))
        self._row_upper.append(float(upper))
        if group is not None:
            self._row_groups.setdefault(group, []).append(row)
        return row

    def add_eq(self, coefficients: dict[int, float], rhs: float, group: str | None = None) -> int:
        return self.add_row(coefficients, rhs, rhs, group=group)

    def add_cost(self, index: int, cost: float):
        self._cost[index] += cost

    def build(self, kind: str = "", horizon: int = 1) -> MilpModel:
        n = self.n_vars
        A = sparse.csr_matrix(
            (self._vals, (self._rows, self._cols)), shape=(self.n_rows, n), dtype=float
        )
        lp = LinearProgram(
            c=np.array(self._cost, dtype=float),
            A=A,
            row_lower=np.array(self._row_lower, dtype=float),
            row_upper=np.array(self._row_upper, dtype=float),
            var_lower=np.array(self._lower, dtype=float),
            var_upper=np.array(self._upper, dtype=float),
            c0=self.c0,
        )
        groups = {name: np.array(indices, dtype=int) for name, indices in self._groups.items()}
        row_groups = {name: np.array(rows, dtype=int) for name, rows in self._row_groups.items()}
        return MilpModel(
            lp=lp,
            binary_vars=tuple(self._binary),
            var_names=tuple(self._names),
            groups=groups,
            kind=kind,
            row_groups=row_groups,
            horizon=horizon,
        )
