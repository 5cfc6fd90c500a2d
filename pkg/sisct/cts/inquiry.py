import logging
from dataclasses import dataclass
from typing import Optional

from sisct.commitments import PublicParams, Verdict, verify
from sisct.image_io import Share

_logger = logging.getLogger(__name__)

AUTHENTICATION_FAILED = 'authentication-failed'


class InquiryError(RuntimeError):
    pass


@dataclass(frozen=True)
class InquiryResponse:
    granted: bool
    status: str

    def render(self) -> str:
        if self.granted:
            return f"granted status={self.status}"
        return f"denied reason={self.status}"


def customer_inquiry(share: Optional[Share], params: Optional[PublicParams], status: str) -> InquiryResponse:
    """
    Authenticate a customer by the SC2 copy they hold and, if it is genuine, disclose the cheque status.
    A share that could not be parsed at all is passed as ``None`` and fails authentication.
    """
    if params is None:
        raise InquiryError("no public parameters have been published for this cheque yet")
    if share is None:
        return InquiryResponse(granted=False, status=AUTHENTICATION_FAILED)
    report = verify(params, {2: share})
    if report[2] is Verdict.HONEST:
        return InquiryResponse(granted=True, status=status)
    _logger.info("Customer inquiry rejected, SC2 does not match the commitment")
    return InquiryResponse(granted=False, status=AUTHENTICATION_FAILED)
