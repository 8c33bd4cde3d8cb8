import pydantic
import typing

from src.errors import ContractViolation
from src.errors import ParseError
from src.forest.parsing import parse_tree
from src.groups.element import VElement
from src.groups.element import classify
from src.groups.element import make_element
from src.groups.symmetric import Perm
from src.representations.ring import RingElem


class ElementModel(pydantic.BaseModel):
    """JSON form of an element: {"domain": <tree>, "range": <tree>, "perm": [images]}."""

    domain: str
    range: str
    perm: list[int]

    @classmethod
    def from_element(cls, g: VElement) -> "ElementModel":
        return cls(domain=str(g.domain), range=str(g.range), perm=list(g.bijection.images))

    def to_element(self) -> VElement:
        domain, range_ = parse_tree(self.domain), parse_tree(self.range)
        try:
            return make_element(domain, range_, Perm.of(self.perm))
        except ContractViolation as e:
            raise ParseError(str(e), self.model_dump_json(), 0) from e


class ElementReport(pydantic.BaseModel):
    element: ElementModel
    literal: str
    group: str
    leaves: int

    @classmethod
    def of(cls, g: VElement) -> "ElementReport":
        return cls(element=ElementModel.from_element(g), literal=str(g), group=str(classify(g)), leaves=g.leaf_count)


class PolynomialModel(pydantic.BaseModel):
    """An integer polynomial in alpha, dense coefficients lowest degree first."""

    coefficients: list[int]
    expression: str

    @classmethod
    def of(cls, value: RingElem) -> "PolynomialModel":
        even, _ = value.coefficients()
        return cls(coefficients=even, expression=str(value))


class PhiReport(pydantic.BaseModel):
    element: ElementModel
    polynomial: PolynomialModel
    alpha: typing.Optional[str] = None
    value: typing.Optional[str] = None


class FarleyReport(pydantic.BaseModel):
    element: ElementModel
    norm: int
    beta: typing.Optional[str] = None
    farley_value: typing.Optional[str] = None
    farley_float: typing.Optional[float] = None
    phi: PolynomialModel
    agrees: bool
