import asyncio
from pathlib import Path

from client import VerifierClient
from core import settings

EXAMPLE = Path(__file__).resolve().parent / "cli" / "programs" / "example41.prog"


async def amain() -> None:
    #### ASYNC ####
    client = VerifierClient(settings.BASE_URL)

    print("Service info:")
    print(client.info)

    print("Check example:")
    result = await client.acheck(EXAMPLE, (0, 0, 0), ["rcpld", "prcpld"])
    for report in result.reports:
        print(report.pretty_repr())


def main() -> None:
    #### SYNC ####
    client = VerifierClient(settings.BASE_URL)

    print("Service info:")
    print(client.info)

    print("Check example:")
    result = client.check(EXAMPLE, (0, 0, 0), ["rcpld", "prcpld"])
    for report in result.reports:
        print(report.pretty_repr())

    print("\nLimiting normal cone example:")
    print(client.normal_cone(EXAMPLE, (0, 0, 0)).pretty_repr())


if __name__ == "__main__":
    print("Running in sync mode")
    main()
    print("\n\n")
    print("Running in async mode")
    asyncio.run(amain())
