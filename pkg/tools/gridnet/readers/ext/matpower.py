# ====== Code Summary ======
# Reader for the MATPOWER `.m` case subset: `mpc.baseMVA`, `mpc.bus`, `mpc.gen`, `mpc.branch`
# and `mpc.gencost`. Quantities are converted to per-unit on baseMVA. Branch series impedance
# r + jx becomes the admittance g - jb with b = x/(r²+x²) and g = r/(r²+x²), so inductive lines
# have positive b. Bus loads (Pd, Qd) become fixed, non-commitable devices with p = -Pd.

# ====== Standard Library Imports ======
import re

# ====== Third-Party Library Imports ======
from loggerplusplus import Logger

# ====== Internal Project Imports ======
from gridnet.exceptions import CaseParseError
from gridnet.models import Branch, Bus, Device, Network, NetworkDefaults
from gridnet.readers.abstract_reader import AbstractCaseReader

_COMMENT_RE = re.compile(r"%[^\n]*")
_MATRIX_RE = re.compile(r"mpc\.(?P<name>\w+)\s*=\s*\[(?P<body>.*?)\]", re.DOTALL)
_BASE_MVA_RE = re.compile(r"mpc\.baseMVA\s*=\s*(?P<value>[^;\s]+)\s*;")
_FUNCTION_RE = re.compile(r"function\s+mpc\s*=\s*(?P<name>\w+)")

# Minimum column counts of the tables, following the MATPOWER case format.
_MIN_COLUMNS = {"bus": 13, "gen": 10, "branch": 11, "gencost": 4}


class MatpowerCaseReader(AbstractCaseReader):
    """
    Reader for MATPOWER case files.
    """

    def __init__(self, defaults: NetworkDefaults | None = None, logger: Logger | None = None):
        super().__init__(defaults=defaults, logger=logger)

    # ------------------------------------------------------------------ tables
    @staticmethod
    def _tables(text: str) -> dict[str, list[tuple[int, list[float]]]]:
        tables: dict[str, list[tuple[int, list[float]]]] = {}
        for match in _MATRIX_RE.finditer(text):
            name = match.group("name")
            first_line = text.count("\n", 0, match.start("body")) + 1
            rows: list[tuple[int, list[float]]] = []
            for offset, line in enumerate(match.group("body").split("\n")):
                for chunk in line.split(";"):
                    tokens = chunk.replace(",", " ").split()
                    if not tokens:
                        continue
                    try:
                        rows.append((first_line + offset, [float(token) for token in tokens]))
                    except ValueError as e:
                        raise CaseParseError(
                            f"non-numeric entry in row '{chunk.strip()}'", f"mpc.{name}", first_line + offset
                        ) from e
            tables[name] = rows
        return tables

    @staticmethod
    def _require(tables: dict, name: str) -> list[tuple[int, list[float]]]:
        if name not in tables:
            raise CaseParseError(f"missing table mpc.{name}", f"mpc.{name}", 0)
        rows = tables[name]
        for line, row in rows:
            if len(row) < _MIN_COLUMNS[name]:
                raise CaseParseError(
                    f"expected at least {_MIN_COLUMNS[name]} columns, got {len(row)}", f"mpc.{name}", line
                )
        return rows

    # ------------------------------------------------------------------ parsing
    def parse(self, text: str, name: str = "") -> Network:
        text = _COMMENT_RE.sub("", text)

        base_match = _BASE_MVA_RE.search(text)
        if base_match is None:
            raise CaseParseError("missing mpc.baseMVA", "mpc.baseMVA", 0)
        try:
            base_mva = float(base_match.group("value"))
        except ValueError as e:
            line = text.count("\n", 0, base_match.start()) + 1
            raise CaseParseError(f"invalid baseMVA '{base_match.group('value')}'", "mpc.baseMVA", line) from e
        if base_mva <= 0:
            raise CaseParseError(f"baseMVA must be positive, got {base_mva}", "mpc.baseMVA", 0)

        if not name:
            function_match = _FUNCTION_RE.search(text)
            name = function_match.group("name") if function_match else ""

        tables = self._tables(text)
        bus_rows = self._require(tables, "bus")
        gen_rows = self._require(tables, "gen")
        branch_rows = self._require(tables, "branch")
        gencost_rows = self._require(tables, "gencost")
        if len(gencost_rows) < len(gen_rows):
            raise CaseParseError(
                f"{len(gencost_rows)} gencost rows for {len(gen_rows)} generators", "mpc.gencost", 0
            )

        defaults_applied: list[str] = []
        buses, loads = self._buses(bus_rows, base_mva, defaults_applied)
        generators = self._generators(gen_rows, gencost_rows, base_mva, defaults_applied)
        branches = self._branches(branch_rows, base_mva, defaults_applied)

        next_id = max((dev.id for dev in generators), default=0) + 1
        load_devices = []
        for offset, (bus_id, pd, qd) in enumerate(loads):
            load_devices.append(
                Device(id=next_id + offset, bus=bus_id, cost=0.0, p_min=-pd, p_max=-pd, q_min=-qd, q_max=-qd)
            )

        net = Network(
            buses=tuple(buses),
            branches=tuple(branches),
            devices=tuple(generators) + tuple(load_devices),
            base_mva=base_mva,
            name=name,
            defaults_applied=tuple(defaults_applied),
        )
        return self._validated(net)

    def _buses(self, rows, base_mva: float, defaults_applied: list[str]):
        buses: list[Bus] = []
        loads: list[tuple[int, float, float]] = []
        shunts = 0
        for line, row in rows:
            bus_id = int(row[0])
            pd, qd, gs, bs = row[2], row[3], row[4], row[5]
            base_kv = row[9]
            if base_kv <= 0:
                base_kv = self.defaults.base_kv
                defaults_applied.append(f"bus[{bus_id}].base_kv")
            v_max, v_min = row[11], row[12]
            if v_max <= 0 or v_min <= 0:
                v_min, v_max = self.defaults.v_min, self.defaults.v_max
                defaults_applied.append(f"bus[{bus_id}].v_min")
                defaults_applied.append(f"bus[{bus_id}].v_max")
            if gs != 0 or bs != 0:
                shunts += 1
            buses.append(Bus(id=bus_id, base_kv=base_kv, v_min=v_min, v_max=v_max))
            if pd != 0 or qd != 0:
                loads.append((bus_id, pd / base_mva, qd / base_mva))
        if shunts:
            self.logger.warning(f"Ignoring shunt admittance at {shunts} buses")
        return buses, loads

    def _generators(self, gen_rows, gencost_rows, base_mva: float, defaults_applied: list[str]):
        devices: list[Device] = []
        skipped = 0
        for index, ((line, row), (cost_line, cost_row)) in enumerate(zip(gen_rows, gencost_rows), start=1):
            cost = self._linear_cost(cost_row, cost_line)
            if row[7] <= 0:
                skipped += 1
                continue
            p_max, p_min = row[8] / base_mva, row[9] / base_mva
            q_max, q_min = row[3] / base_mva, row[4] / base_mva
            if q_min == 0 and q_max == 0:
                q_max = self.defaults.q_ratio * abs(p_max)
                q_min = -q_max
                defaults_applied.append(f"device[{index}].q_min")
                defaults_applied.append(f"device[{index}].q_max")
            devices.append(
                Device(id=index, bus=int(row[0]), cost=cost, p_min=p_min, p_max=p_max, q_min=q_min, q_max=q_max)
            )
        if skipped:
            self.logger.warning(f"Skipping {skipped} out-of-service generators")
        return devices

    @staticmethod
    def _linear_cost(row: list[float], line: int) -> float:
        model = int(row[0])
        if model != 2:
            raise CaseParseError(f"only polynomial gencost (model 2) is supported, got model {model}", "mpc.gencost", line)
        n = int(row[3])
        coefficients = row[4:4 + n]
        if len(coefficients) < n:
            raise CaseParseError(f"gencost declares {n} coefficients, found {len(coefficients)}", "mpc.gencost", line)
        if any(c != 0 for c in coefficients[:max(n - 2, 0)]):
            raise CaseParseError(
                f"polynomial gencost of degree {n - 1} is not supported (linear costs only)", "mpc.gencost", line
            )
        return coefficients[-2] if n >= 2 else 0.0

    def _branches(self, rows, base_mva: float, defaults_applied: list[str]):
        branches: list[Branch] = []
        taps = 0
        for index, (line, row) in enumerate(rows, start=1):
            r, x = row[2], row[3]
            z2 = r * r + x * x
            if z2 == 0:
                raise CaseParseError("branch with zero impedance", "mpc.branch", line)
            rate_a = row[5]
            if rate_a <= 0:
                rate_a = self.defaults.unlimited_rating_mva
                defaults_applied.append(f"branch[{index}].p_max")
            ratio, angle = row[8], row[9]
            if (ratio not in (0.0, 1.0)) or angle != 0:
                taps += 1
            branches.append(
                Branch(
                    id=index,
                    origin=int(row[0]),
                    dest=int(row[1]),
                    b=x / z2,
                    g=r / z2,
                    p_max=rate_a / base_mva,
                    switchable=True,
                    x0=1 if row[10] > 0 else 0,
                )
            )
        if taps:
            self.logger.warning(f"Ignoring tap ratio / phase shift on {taps} branches")
        return branches


def parse_matpower_case(text: str, defaults: NetworkDefaults | None = None) -> Network:
    """Parses MATPOWER case text into a validated Network."""
    return MatpowerCaseReader(defaults=defaults).parse(text)
