from model import OrthoProgram, Program, loads_program
from schema import CqName, OrthoCqName, ProgramInput, RunConfig


def load_input(data: ProgramInput) -> tuple[Program | OrthoProgram, tuple]:
    """Parse the program text of a request; the point is already rational."""
    return loads_program(data.program), tuple(data.point)


def supported_cqs() -> list[str]:
    return [c.value for c in CqName] + [c.value for c in OrthoCqName]


def default_config(**overrides) -> RunConfig:
    return RunConfig.from_settings(**overrides)
