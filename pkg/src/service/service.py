import logging
from importlib.metadata import PackageNotFoundError, version
from typing import Annotated

from fastapi import APIRouter, Depends, FastAPI, HTTPException, Request, status
from fastapi.responses import JSONResponse
from fastapi.security import HTTPAuthorizationCredentials, HTTPBearer

from cli.commands import errorbound, mstat, normal_cone, run_checks
from core import VerificationError, settings
from schema import (
    CheckInput,
    CheckResult,
    ErrorBoundEstimate,
    ErrorBoundInput,
    MStatInput,
    MStatReport,
    NormalConeInput,
    NormalConeReport,
    ServiceMetadata,
)
from service.utils import default_config, load_input, supported_cqs

logger = logging.getLogger(__name__)


def verify_bearer(
    http_auth: Annotated[
        HTTPAuthorizationCredentials | None,
        Depends(HTTPBearer(description="Please provide AUTH_SECRET api key.", auto_error=False)),
    ],
) -> None:
    if not settings.AUTH_SECRET:
        return
    auth_secret = settings.AUTH_SECRET.get_secret_value()
    if not http_auth or http_auth.credentials != auth_secret:
        raise HTTPException(status_code=status.HTTP_401_UNAUTHORIZED)


def package_version() -> str:
    try:
        return version("mpdc-verify")
    except PackageNotFoundError:
        return "0.1.0"


app = FastAPI(title="MPDC verification service")
router = APIRouter(dependencies=[Depends(verify_bearer)])


@app.exception_handler(VerificationError)
async def verification_error(request: Request, exc: VerificationError) -> JSONResponse:
    logger.info(f"{request.url.path}: {exc}")
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, content={"detail": str(exc)}
    )


@router.get("/info")
async def info() -> ServiceMetadata:
    return ServiceMetadata(
        version=package_version(),
        cqs=supported_cqs(),
        default_scheme=default_config().scheme,
    )


# The checkers are CPU bound; plain functions run in the threadpool.


@router.post("/check")
def check(data: CheckInput) -> CheckResult:
    """Run the requested checkers at the point.

    ``exit_code`` follows the command line: 0 when every checker holds, 1 when
    one fails with a witness, 2 when one is inconclusive.
    """
    program, x = load_input(data)
    try:
        config = default_config(**data.overrides())
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e)) from e
    try:
        return run_checks(program, x, data.cqs, config)
    except VerificationError:
        raise
    except Exception as e:
        logger.error(f"An exception occurred: {e}")
        raise HTTPException(status_code=500, detail="Unexpected error")


@router.post("/normal-cone")
def cone(data: NormalConeInput) -> NormalConeReport:
    program, x = load_input(data)
    return normal_cone(program, x, data.block, data.kind, default_config())


@router.post("/mstat")
def stationarity(data: MStatInput) -> MStatReport:
    program, x = load_input(data)
    return mstat(program, x, default_config(), every=data.all)


@router.post("/errorbound")
def error_bound(data: ErrorBoundInput) -> ErrorBoundEstimate:
    program, x = load_input(data)
    return errorbound(program, x, data.eps, data.samples, data.seed, default_config())


@app.get("/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "ok"}


app.include_router(router)
