"""
In-process transport: a FIFO event loop that delivers every message to its recipient's mailbox in
posting order, and the adversary that rewrites share payloads in transit.
"""
import logging
from collections import deque
from dataclasses import dataclass

from sisct.cts.messages import CtsMessage, Kind, RoleName
from sisct.image_io import SHARE_HEADER_SIZE

_logger = logging.getLogger(__name__)

# workflow steps whose ShareTransfer carries the given share index
SHARE_TRANSFER_STEPS = {1: (5, 7), 2: (6,), 3: (9,)}


class ScenarioConfigError(ValueError):
    pass


class TamperError(ValueError):
    pass


def tamper_share_bytes(data: bytes, offset: int, xor_byte: int) -> bytes:
    """XOR one byte of a serialized share's pixel payload; `offset` counts from the start of the payload."""
    if not 1 <= xor_byte <= 255:
        raise TamperError(f"xor byte must be in [1, 255], got {xor_byte}")
    payload_size = len(data) - SHARE_HEADER_SIZE
    if not 0 <= offset < payload_size:
        raise TamperError(f"offset {offset} outside the {max(payload_size, 0)}-byte share payload")
    tampered = bytearray(data)
    tampered[SHARE_HEADER_SIZE + offset] ^= xor_byte
    return bytes(tampered)


@dataclass(frozen=True)
class Adversary:
    target: int
    offset: int
    step: int
    xor_byte: int = 1

    def __post_init__(self):
        if self.target not in SHARE_TRANSFER_STEPS:
            raise ScenarioConfigError(f"adversary target must be share 1, 2 or 3, got {self.target}")
        if self.step not in SHARE_TRANSFER_STEPS[self.target]:
            raise ScenarioConfigError(f"share {self.target} travels at step(s) "
                                      f"{SHARE_TRANSFER_STEPS[self.target]}, not at step {self.step}")
        if self.offset < 0:
            raise ScenarioConfigError(f"tamper offset must be non-negative, got {self.offset}")
        if not 1 <= self.xor_byte <= 255:
            raise ScenarioConfigError(f"tamper xor byte must be in [1, 255], got {self.xor_byte}")

    def intercept(self, message: CtsMessage) -> CtsMessage:
        if (message.kind is Kind.SHARE_TRANSFER and message.step == self.step
                and message.share_index == self.target):
            _logger.info(f"Adversary flips payload byte {self.offset} of share {self.target} at step {self.step}")
            return message.with_payload(tamper_share_bytes(message.payload, self.offset, self.xor_byte))
        return message


class Network:
    def __init__(self, adversary: Adversary = None):
        self.adversary = adversary
        self.participants = {}
        self.transcript = []
        # (msg_id, step, {role: share indices held}) captured before each delivery
        self.holdings = []
        self._queue = deque()
        self._next_id = 1

    def register(self, participant):
        if participant.role in self.participants:
            raise ValueError(f"{participant.role.value} is already attached")
        self.participants[participant.role] = participant

    def send(self, step: int, sender: RoleName, recipient: RoleName, kind: Kind, payload: bytes, content,
             share_index: int = None) -> CtsMessage:
        message = CtsMessage(msg_id=self._next_id, step=step, sender=sender, recipient=recipient, kind=kind,
                             payload=bytes(payload), content=content, share_index=share_index)
        self._next_id += 1
        if self.adversary is not None:
            message = self.adversary.intercept(message)
        self._queue.append(message)
        self.transcript.append(message)
        return message

    def run(self):
        while self._queue:
            message = self._queue.popleft()
            self.holdings.append((message.msg_id, message.step, {
                role: tuple(sorted(participant.shares)) for role, participant in self.participants.items()}))
            _logger.debug(f"Delivering {message}")
            recipient = self.participants[message.recipient]
            recipient.deliver(message)
            recipient.process(self)
