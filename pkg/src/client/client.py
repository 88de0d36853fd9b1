import os
from collections.abc import Sequence
from pathlib import Path
from typing import Any, TypeVar

import httpx
from pydantic import BaseModel

from schema import (
    CheckInput,
    CheckResult,
    ErrorBoundEstimate,
    ErrorBoundInput,
    MStatInput,
    MStatReport,
    NormalConeInput,
    NormalConeKind,
    NormalConeReport,
    ServiceMetadata,
)

Report = TypeVar("Report", bound=BaseModel)


class VerifierClientError(Exception):
    pass


def _program_text(program: str | Path) -> str:
    return program.read_text(encoding="utf-8") if isinstance(program, Path) else program


def _point(x: Sequence[object]) -> list[str]:
    return [str(v) for v in x]


class VerifierClient:
    """Client for the verification service."""

    def __init__(
        self,
        base_url: str = "http://0.0.0.0",
        timeout: float | None = None,
        get_info: bool = True,
    ) -> None:
        """
        Initialize the client.

        Args:
            base_url (str): The base URL of the verification service.
            timeout (float, optional): The timeout for requests.
            get_info (bool, optional): Whether to fetch service information on init.
                Default: True
        """
        self.base_url = base_url
        self.auth_secret = os.getenv("AUTH_SECRET")
        self.timeout = timeout
        self.info: ServiceMetadata | None = None
        if get_info:
            self.retrieve_info()

    @property
    def _headers(self) -> dict[str, str]:
        headers = {}
        if self.auth_secret:
            headers["Authorization"] = f"Bearer {self.auth_secret}"
        return headers

    def retrieve_info(self) -> None:
        try:
            response = httpx.get(
                f"{self.base_url}/info",
                headers=self._headers,
                timeout=self.timeout,
            )
            response.raise_for_status()
        except httpx.HTTPError as e:
            raise VerifierClientError(f"Error getting service info: {e}")
        self.info = ServiceMetadata.model_validate(response.json())

    def _post(self, path: str, request: BaseModel, result: type[Report]) -> Report:
        try:
            response = httpx.post(
                f"{self.base_url}/{path}",
                json=request.model_dump(mode="json"),
                headers=self._headers,
                timeout=self.timeout,
            )
            response.raise_for_status()
        except httpx.HTTPError as e:
            raise VerifierClientError(f"Error: {e}")
        return result.model_validate(response.json())

    async def _apost(self, path: str, request: BaseModel, result: type[Report]) -> Report:
        async with httpx.AsyncClient() as client:
            try:
                response = await client.post(
                    f"{self.base_url}/{path}",
                    json=request.model_dump(mode="json"),
                    headers=self._headers,
                    timeout=self.timeout,
                )
                response.raise_for_status()
            except httpx.HTTPError as e:
                raise VerifierClientError(f"Error: {e}")
        return result.model_validate(response.json())

    @staticmethod
    def _check_input(program, x, cqs, **overrides: Any) -> CheckInput:
        return CheckInput(
            program=_program_text(program), point=_point(x), cqs=list(cqs), **overrides
        )

    def check(
        self,
        program: str | Path,
        x: Sequence[object],
        cqs: Sequence[str] = ("rcpld",),
        **overrides,
    ) -> CheckResult:
        """
        Run checkers at a point.

        Args:
            program (str | Path): Program text, or a path to a program file
            x (Sequence): The point; entries are sent as rational strings
            cqs (Sequence[str]): Checker names
            overrides: radius0, levels, directions, seed or cap

        Returns:
            CheckResult: One report per checker and the combined exit code
        """
        return self._post("check", self._check_input(program, x, cqs, **overrides), CheckResult)

    async def acheck(
        self,
        program: str | Path,
        x: Sequence[object],
        cqs: Sequence[str] = ("rcpld",),
        **overrides,
    ) -> CheckResult:
        request = self._check_input(program, x, cqs, **overrides)
        return await self._apost("check", request, CheckResult)

    def normal_cone(
        self,
        program: str | Path,
        x: Sequence[object],
        block: int = 0,
        kind: NormalConeKind = NormalConeKind.LIMITING,
    ) -> NormalConeReport:
        request = NormalConeInput(
            program=_program_text(program), point=_point(x), block=block, kind=kind
        )
        return self._post("normal-cone", request, NormalConeReport)

    async def anormal_cone(
        self,
        program: str | Path,
        x: Sequence[object],
        block: int = 0,
        kind: NormalConeKind = NormalConeKind.LIMITING,
    ) -> NormalConeReport:
        request = NormalConeInput(
            program=_program_text(program), point=_point(x), block=block, kind=kind
        )
        return await self._apost("normal-cone", request, NormalConeReport)

    def mstat(self, program: str | Path, x: Sequence[object], all: bool = False) -> MStatReport:
        request = MStatInput(program=_program_text(program), point=_point(x), all=all)
        return self._post("mstat", request, MStatReport)

    async def amstat(
        self, program: str | Path, x: Sequence[object], all: bool = False
    ) -> MStatReport:
        request = MStatInput(program=_program_text(program), point=_point(x), all=all)
        return await self._apost("mstat", request, MStatReport)

    def errorbound(
        self,
        program: str | Path,
        x: Sequence[object],
        eps: object = "1/10",
        samples: int = 1000,
        seed: int | None = None,
    ) -> ErrorBoundEstimate:
        request = ErrorBoundInput(
            program=_program_text(program), point=_point(x), eps=eps, samples=samples, seed=seed
        )
        return self._post("errorbound", request, ErrorBoundEstimate)

    async def aerrorbound(
        self,
        program: str | Path,
        x: Sequence[object],
        eps: object = "1/10",
        samples: int = 1000,
        seed: int | None = None,
    ) -> ErrorBoundEstimate:
        request = ErrorBoundInput(
            program=_program_text(program), point=_point(x), eps=eps, samples=samples, seed=seed
        )
        return await self._apost("errorbound", request, ErrorBoundEstimate)
