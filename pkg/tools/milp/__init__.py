from milp.exceptions import MilpError, MalformedProgramError
from milp.models import LinearProgram, LpSolution, MilpConfig, MilpModel, MilpSolution, SolveStatus
from milp.builder import MilpBuilder
from milp.lp import solve_lp
from milp.branch_and_bound import BranchAndBoundSolver, solve_milp
from milp.lp_text import lp_text
