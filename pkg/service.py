import bentoml
from bentoml.exceptions import InvalidArgument

from src.core.class_manager import ClassManager
from src.curves.isogeny import all_prime_isogenies, isogenies_of_degree
from src.curves.sporadic import get_sporadic_table
from src.curves.weier import WeierstrassModel
from src.cli import isogeny_report, torsion_report
from src.schemas import CurveInput, GraphReport, IsogenyQuery, IsogenyReport, TorsionReport
from src.utils.exceptions import CurveParseError, SingularCurveError, UnsupportedInputError
from src.utils.logger import logger
from src.utils.parsing import parse_curve_input


def _curve(request: CurveInput) -> WeierstrassModel:
    try:
        return parse_curve_input(request.curve, request.short)
    except (CurveParseError, SingularCurveError, UnsupportedInputError) as e:
        raise InvalidArgument(str(e)) from e


@bentoml.service(
    name="isogeny_atlas",
    traffic={"timeout": 120},
)
class IsogenyAtlasService:
    def __init__(self):
        self.class_manager = ClassManager()
        self.sporadic_records = len(get_sporadic_table())
        logger.info(f"Isogeny atlas service initialized with {self.sporadic_records} sporadic records")

    @bentoml.api(route="/v1/classify")
    def classify(self, request: CurveInput) -> GraphReport:
        return self.class_manager.classify(_curve(request)).to_report()

    @bentoml.api(route="/v1/torsion")
    def torsion(self, request: CurveInput) -> TorsionReport:
        return torsion_report(_curve(request))

    @bentoml.api(route="/v1/isogenies")
    def isogenies(self, request: IsogenyQuery) -> list[IsogenyReport]:
        E = _curve(request)
        try:
            found = isogenies_of_degree(E, request.ell) if request.ell else all_prime_isogenies(E)
        except UnsupportedInputError as e:
            raise InvalidArgument(str(e)) from e
        return [isogeny_report(phi) for phi in found]

    @bentoml.api(route="/health")
    def health(self) -> dict:
        return {"status": "ok", "sporadic_records": self.sporadic_records}
