"""
The six parties of the clearing workflow.

Each participant owns a FIFO mailbox and a store of the shares it has received (keyed by share index).
The presenting bank is the dealer: it alone splits the captured cheque and commits to the shares; its
gateway (the presenting CHI) only ever gets SC1 and the public parameters back.
"""
import logging
from collections import deque
from dataclasses import dataclass

from sisct.commitments import dumps_params, loads_params, make_params, verify
from sisct.cts.inquiry import customer_inquiry
from sisct.cts.messages import Content, Kind, RoleName
from sisct.image_io import GrayImage, ShareFormatError, read_pgm, read_share, write_pgm, write_share
from sisct.schemes import reconstruct, scheme_pool

_logger = logging.getLogger(__name__)

STATUS_PENDING = 'pending'
STATUS_PROCESSED = 'processed'
STATUS_RESEND_REQUESTED = 'resend-requested'


@dataclass(frozen=True)
class Accepted:
    image: GrayImage

    def __str__(self):
        return "Accepted"


@dataclass(frozen=True)
class Rejected:
    index: int

    def __str__(self):
        return f"Rejected({self.index})"


def _parse_share(payload):
    try:
        return read_share(payload)
    except ShareFormatError as e:
        _logger.warning(f"Received share payload does not parse: {e}")
        return None


class Participant:
    role: RoleName = None

    def __init__(self):
        self.mailbox = deque()
        self.shares = {}
        self.params = None

    def deliver(self, message):
        self.mailbox.append(message)

    def process(self, network):
        while self.mailbox:
            message = self.mailbox.popleft()
            handler = getattr(self, f"on_{message.kind.name.lower()}", None)
            if handler is None:
                _logger.warning(f"{self.role.value} ignores unexpected {message}")
                continue
            handler(message, network)

    def send(self, network, step, recipient, kind, payload, content, share_index=None):
        return network.send(step, self.role, recipient, kind, payload, content, share_index=share_index)

    def __repr__(self):
        return f"{self.__class__.__name__}(shares={sorted(self.shares)})"


class Customer(Participant):
    role = RoleName.CUSTOMER

    def __init__(self, cheque: GrayImage):
        super(Customer, self).__init__()
        self.cheque = cheque
        self.share_payload = None
        self.inquiry = None

    def submit(self, network):
        _logger.info("Customer submits the cheque")
        self.send(network, 1, RoleName.PRESENTING_BANK, Kind.SUBMIT_CHEQUE, write_pgm(self.cheque), Content.IMAGE)

    def on_share_transfer(self, message, network):
        self.share_payload = message.payload
        share = _parse_share(message.payload)
        if share is not None:
            self.shares[share.index] = share

    def inquire(self, network):
        if self.share_payload is None:
            _logger.warning("Customer holds no share to authenticate with")
            return
        self.send(network, 12, RoleName.PRESENTING_BANK, Kind.INQUIRY_REQUEST, self.share_payload, Content.SHARE,
                  share_index=2)

    def on_inquiry_response(self, message, network):
        self.inquiry = message.payload.decode('ascii')
        _logger.info(f"Customer inquiry answered: {self.inquiry}")


class PresentingBank(Participant):
    """The dealer."""
    role = RoleName.PRESENTING_BANK

    def __init__(self, scheme, rng, micr: str, prime: int = None):
        super(PresentingBank, self).__init__()
        self.scheme = scheme_pool[scheme]
        self.rng = rng
        self.micr = micr
        self.prime = prime
        self.captured = None
        self.status = STATUS_PENDING
        self.inquiry_response = None

    def on_submit_cheque(self, message, network):
        self.captured = read_pgm(message.payload)
        _logger.info(f"Captured {self.captured.width}x{self.captured.height} cheque image and MICR data")
        self.send(network, 3, RoleName.PRESENTING_CHI, Kind.DATA_TRANSFER, write_pgm(self.captured), Content.IMAGE)
        self.send(network, 3, RoleName.PRESENTING_CHI, Kind.DATA_TRANSFER, self.micr.encode('ascii'), Content.MICR)

    def deal(self, image: GrayImage):
        """Split the cheque, commit to the shares, keep them; hand SC1 and the public parameters to the gateway."""
        triple = self.scheme.split(image, self.rng)
        self.params = make_params(triple, p=self.prime, rng=self.rng)
        self.shares = {share.index: share for share in triple}
        _logger.info(f"Dealt three {self.scheme.name} shares, T has {self.params.T.bit_length()} bits")
        return triple.sc1, self.params

    def on_data_transfer(self, message, network):
        if message.content is Content.PARAMS:
            # parameters published: the customer's copy goes out
            self.send(network, 6, RoleName.CUSTOMER, Kind.SHARE_TRANSFER, write_share(self.shares[2]), Content.SHARE,
                      share_index=2)

    def on_share_request(self, message, network):
        # nothing authenticates the requester here; any request is served
        _logger.warning(f"Serving unauthenticated share request from {message.sender.value}")
        self.send(network, 9, RoleName.DRAWEE_CHI, Kind.SHARE_TRANSFER, write_share(self.shares[3]), Content.SHARE,
                  share_index=3)

    def on_resend_request(self, message, network):
        self.status = STATUS_RESEND_REQUESTED
        _logger.info(f"Drawee side asks for share {message.share_index} again")

    def on_processing_result(self, message, network):
        self.status = STATUS_PROCESSED
        _logger.info(f"Drawee bank reports: {message.payload.decode('ascii')}")

    def on_inquiry_request(self, message, network):
        response = customer_inquiry(_parse_share(message.payload), self.params, self.status)
        self.inquiry_response = response
        self.send(network, 12, RoleName.CUSTOMER, Kind.INQUIRY_RESPONSE, response.render().encode('ascii'),
                  Content.TEXT)


class PresentingCHI(Participant):
    role = RoleName.PRESENTING_CHI

    def __init__(self, bank: PresentingBank):
        super(PresentingCHI, self).__init__()
        self.bank = bank
        self.image = None
        self.micr = None

    def on_data_transfer(self, message, network):
        if message.content is Content.IMAGE:
            self.image = read_pgm(message.payload)
        elif message.content is Content.MICR:
            self.micr = message.payload
        if self.image is None or self.micr is None:
            return
        sc1, params = self.bank.deal(self.image)
        self.shares[1] = sc1
        self.params = params
        params_bytes = dumps_params(params).encode('ascii')
        self.send(network, 4, RoleName.PRESENTING_BANK, Kind.DATA_TRANSFER, params_bytes, Content.PARAMS)
        self.send(network, 5, RoleName.CLEARING_HOUSE, Kind.SHARE_TRANSFER, write_share(sc1), Content.SHARE,
                  share_index=1)
        self.send(network, 5, RoleName.CLEARING_HOUSE, Kind.DATA_TRANSFER, self.micr, Content.MICR)
        self.send(network, 5, RoleName.CLEARING_HOUSE, Kind.DATA_TRANSFER, params_bytes, Content.PARAMS)


class _Relay(Participant):
    """collects SC1, MICR data and params before acting on them"""

    def __init__(self):
        super(_Relay, self).__init__()
        self.share_payload = None
        self.micr = None
        self.params_payload = None

    @property
    def complete(self):
        return None not in (self.share_payload, self.micr, self.params_payload)

    def on_share_transfer(self, message, network):
        self.share_payload = message.payload
        share = _parse_share(message.payload)
        if share is not None:
            self.shares[message.share_index] = share
        self._check(network)

    def on_data_transfer(self, message, network):
        if message.content is Content.MICR:
            self.micr = message.payload
        elif message.content is Content.PARAMS:
            self.params_payload = message.payload
            self.params = loads_params(message.payload)
        self._check(network)

    def _check(self, network):
        if self.complete:
            self.forward(network)

    def forward(self, network):
        raise NotImplementedError()


class ClearingHouse(_Relay):
    role = RoleName.CLEARING_HOUSE

    def forward(self, network):
        self.send(network, 7, RoleName.DRAWEE_CHI, Kind.SHARE_TRANSFER, self.share_payload, Content.SHARE,
                  share_index=1)
        self.send(network, 7, RoleName.DRAWEE_CHI, Kind.DATA_TRANSFER, self.micr, Content.MICR)
        self.send(network, 7, RoleName.DRAWEE_CHI, Kind.DATA_TRANSFER, self.params_payload, Content.PARAMS)

    def on_resend_request(self, message, network):
        # the dealer holds every share; pass the request on
        _logger.info(f"Relaying resend request for share {message.share_index} to the presenting bank")
        self.send(network, message.step, RoleName.PRESENTING_BANK, Kind.RESEND_REQUEST, message.payload, Content.TEXT,
                  share_index=message.share_index)


class DraweeCHI(_Relay):
    """The receiving gateway: verifies SC1 and SC3 against the commitment and reconstructs the cheque."""
    role = RoleName.DRAWEE_CHI

    def __init__(self):
        super(DraweeCHI, self).__init__()
        self.outcome = None
        self.report = None
        self.reconstructed = None
        self._share_payloads = {}

    def on_share_transfer(self, message, network):
        if message.step == 9:
            self._share_payloads[message.share_index] = message.payload
            share = _parse_share(message.payload)
            if share is not None:
                self.shares[message.share_index] = share
            self.verify_and_reconstruct(network)
            return
        self._share_payloads[message.share_index] = message.payload
        super(DraweeCHI, self).on_share_transfer(message, network)

    def forward(self, network):
        _logger.info("Drawee CHI requests another share from the presenting bank")
        self.send(network, 8, RoleName.PRESENTING_BANK, Kind.SHARE_REQUEST, b'3', Content.TEXT, share_index=3)

    def _verdicts(self):
        return verify(self.params, {index: self._share_payloads[index] for index in sorted(self._share_payloads)})

    def verify_and_reconstruct(self, network):
        self.report = self._verdicts()
        self.send(network, 10, RoleName.DRAWEE_BANK, Kind.VERIFICATION_RESULT, self.report.render().encode('ascii'),
                  Content.VERDICT)
        if not self.report.honest:
            for index in self.report.cheaters:
                holder = RoleName.CLEARING_HOUSE if index == 1 else RoleName.PRESENTING_BANK
                self.send(network, 10, holder, Kind.RESEND_REQUEST, str(index).encode('ascii'), Content.TEXT,
                          share_index=index)
            self.outcome = Rejected(self.report.cheaters[0])
            _logger.info(f"Cheque rejected, cheating shares: {self.report.cheaters}")
            return
        self.reconstructed = reconstruct(self.shares[1], self.shares[3])
        self.outcome = Accepted(self.reconstructed)
        self.send(network, 11, RoleName.DRAWEE_BANK, Kind.DATA_TRANSFER, write_pgm(self.reconstructed),
                  Content.IMAGE)
        self.send(network, 11, RoleName.DRAWEE_BANK, Kind.DATA_TRANSFER, self.micr, Content.MICR)


class DraweeBank(Participant):
    role = RoleName.DRAWEE_BANK

    def __init__(self):
        super(DraweeBank, self).__init__()
        self.image = None
        self.micr = None
        self.verdicts = None

    def on_verification_result(self, message, network):
        self.verdicts = message.payload.decode('ascii')

    def on_data_transfer(self, message, network):
        if message.content is Content.IMAGE:
            self.image = read_pgm(message.payload)
        elif message.content is Content.MICR:
            self.micr = message.payload.decode('ascii')
        if self.image is None or self.micr is None:
            return
        # cheque recognition is not modelled; the result is a fixed acknowledgement
        result = f"processed micr={self.micr}"
        self.send(network, 12, RoleName.PRESENTING_BANK, Kind.PROCESSING_RESULT, result.encode('ascii'),
                  Content.TEXT)
