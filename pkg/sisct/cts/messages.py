import enum
import hashlib
import json
import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

_logger = logging.getLogger(__name__)

TRANSCRIPT_FILENAME = 'transcript.ndjson'


class RoleName(enum.Enum):
    CUSTOMER = 'Customer'
    PRESENTING_BANK = 'PresentingBank'
    PRESENTING_CHI = 'PresentingCHI'
    CLEARING_HOUSE = 'ClearingHouse'
    DRAWEE_CHI = 'DraweeCHI'
    DRAWEE_BANK = 'DraweeBank'


class Kind(enum.Enum):
    SUBMIT_CHEQUE = 'SubmitCheque'
    SHARE_TRANSFER = 'ShareTransfer'
    DATA_TRANSFER = 'DataTransfer'
    SHARE_REQUEST = 'ShareRequest'
    INQUIRY_REQUEST = 'InquiryRequest'
    INQUIRY_RESPONSE = 'InquiryResponse'
    VERIFICATION_RESULT = 'VerificationResult'
    PROCESSING_RESULT = 'ProcessingResult'
    RESEND_REQUEST = 'ResendRequest'


class Content(enum.Enum):
    """what the payload bytes are; not part of the exported transcript"""
    IMAGE = 'image'
    SHARE = 'share'
    PARAMS = 'params'
    MICR = 'micr'
    VERDICT = 'verdict'
    TEXT = 'text'


@dataclass(frozen=True)
class CtsMessage:
    msg_id: int
    step: int
    sender: RoleName
    recipient: RoleName
    kind: Kind
    payload: bytes
    content: Content
    share_index: Optional[int] = None

    @property
    def payload_digest(self) -> str:
        return hashlib.sha256(self.payload).hexdigest()

    @property
    def payload_size(self) -> int:
        return len(self.payload)

    def with_payload(self, payload: bytes) -> 'CtsMessage':
        return replace(self, payload=bytes(payload))

    def to_record(self) -> dict:
        return {
            'msg_id': self.msg_id,
            'step': self.step,
            'from': self.sender.value,
            'to': self.recipient.value,
            'kind': self.kind.value,
            'payload_digest': self.payload_digest,
            'payload_size': self.payload_size,
        }

    def __repr__(self):
        return (f"CtsMessage(#{self.msg_id} step {self.step} {self.sender.value}->{self.recipient.value} "
                f"{self.kind.value} {self.payload_size}B)")


def dumps_transcript(messages) -> str:
    return ''.join(json.dumps(message.to_record(), separators=(',', ':')) + '\n' for message in messages)


def write_transcript(messages, directory) -> Path:
    """
    Write ``transcript.ndjson`` into `directory`, and every share payload beside it as ``<digest>.shr``
    so a replay can resolve the digests.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    messages = list(messages)
    for message in messages:
        if message.content is Content.SHARE:
            (directory / f"{message.payload_digest}.shr").write_bytes(message.payload)
    path = directory / TRANSCRIPT_FILENAME
    path.write_text(dumps_transcript(messages))
    _logger.debug(f"Wrote {len(messages)} messages to {path}")
    return path


def read_transcript(path) -> list:
    return [json.loads(line) for line in Path(path).read_text().splitlines() if line]
