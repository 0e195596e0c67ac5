from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent / "data"

LOGGER_NAMESPACE = "gsn"
LOG_ENV_VAR = "GSN_LOG"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

UNIT = 0  # the monoidal unit is always simple number 0


class ExitCode:
    PASS = 0
    FAILURE = 1
    INPUT_ERROR = 2


class VertexKind:
    BOUNDARY = "boundary"
    MARKED = "marked"


class Suite:
    CATEGORY = "category"
    DIAGRAM = "diagram"
    FUNCTOR = "functor"
    IDEMPOTENT = "idempotent"
    TUBE = "tube"
    PROPOSITIONS = "propositions"
    GLUING = "gluing"
    PTOLEMY = "ptolemy"

    ALL = (CATEGORY, DIAGRAM, FUNCTOR, IDEMPOTENT, TUBE, PROPOSITIONS,
           GLUING, PTOLEMY)


class Orientation:
    """
    Which end of a strand is read first when a cap closes it
    FORWARD: the first leg carries the strand colour itself
    BACKWARD: the first leg carries its dual
    """
    FORWARD = 1
    BACKWARD = -1


BUNDLED_CATEGORIES = {
    "vec": "vec.json",
    "vec_z2": "vec_z2.json",
    "vec_z2_graded": "vec_z2_graded.json",
    "vec_z2_twisted": "vec_z2_twisted.json",
    "vec_s3": "vec_s3.json",
    "ising": "ising_z2.json",
}

# rational recognition of numerically located roots
ROOT_DENOMINATOR_LIMIT = 10 ** 6
ROOT_TOLERANCE = 1e-7
