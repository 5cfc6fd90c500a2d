"""
Deterministic simulation of cheque truncation with secret image sharing: the cheque image travels as
shares from the presenting bank through the clearing house to the drawee side, which verifies the shares
against the dealer's public commitment before reconstructing.
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from tqdm import tqdm

from sisct.commitments import check_prime, ParamsError
from sisct.cts.inquiry import AUTHENTICATION_FAILED, InquiryError, InquiryResponse, customer_inquiry
from sisct.cts.messages import Content, CtsMessage, Kind, RoleName, dumps_transcript, read_transcript, \
    write_transcript
from sisct.cts.network import SHARE_TRANSFER_STEPS, Adversary, Network, ScenarioConfigError, TamperError, \
    tamper_share_bytes
from sisct.cts.roles import Accepted, ClearingHouse, Customer, DraweeBank, DraweeCHI, PresentingBank, \
    PresentingCHI, Rejected
from sisct.image_io import GrayImage, Scheme, load_image, mse, packed_payload_size
from sisct.rng import SeededRandom

_logger = logging.getLogger(__name__)

DEFAULT_MICR = '000000:000000000:000000'
_CONFIG_KEYS = ('scheme', 'seed', 'image', 'micr', 'prime',
                'adversary.target', 'adversary.offset', 'adversary.xor', 'adversary.step')


@dataclass(frozen=True)
class ScenarioConfig:
    scheme: Scheme
    seed: int
    image_path: Path
    micr: str = DEFAULT_MICR
    prime: Optional[int] = None
    adversary: Optional[Adversary] = None

    def __post_init__(self):
        try:
            object.__setattr__(self, 'scheme', Scheme.parse(self.scheme))
        except ValueError as e:
            raise ScenarioConfigError(str(e)) from None
        object.__setattr__(self, 'image_path', Path(self.image_path))
        if not self.micr.isascii() or not self.micr.isprintable():
            raise ScenarioConfigError("MICR data must be printable ASCII")
        if self.prime is not None:
            try:
                check_prime(self.prime)
            except ParamsError as e:
                raise ScenarioConfigError(str(e)) from None


def _int_value(values, key):
    try:
        return int(values[key])
    except ValueError:
        raise ScenarioConfigError(f"{key} must be an integer, got {values[key]!r}") from None


def parse_scenario_config(text: str, base_dir=None) -> ScenarioConfig:
    """
    Parse the line-oriented ``key=value`` scenario format. Blank lines and ``#`` comments are skipped;
    a relative ``image`` path resolves against `base_dir`.
    """
    values = {}
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith('#'):
            continue
        key, separator, value = line.partition('=')
        key, value = key.strip(), value.strip()
        if not separator:
            raise ScenarioConfigError(f"line {number}: expected key=value, got {raw_line!r}")
        if key not in _CONFIG_KEYS:
            raise ScenarioConfigError(f"line {number}: unknown key {key!r}")
        if key in values:
            raise ScenarioConfigError(f"line {number}: duplicate key {key!r}")
        values[key] = value
    for key in ('scheme', 'seed', 'image'):
        if key not in values:
            raise ScenarioConfigError(f"scenario lacks required key {key!r}")

    adversary = None
    adversary_keys = [key for key in ('adversary.target', 'adversary.offset', 'adversary.step') if key in values]
    if adversary_keys:
        if len(adversary_keys) != 3:
            raise ScenarioConfigError("adversary.target, adversary.offset and adversary.step go together")
        adversary = Adversary(target=_int_value(values, 'adversary.target'),
                              offset=_int_value(values, 'adversary.offset'),
                              step=_int_value(values, 'adversary.step'),
                              xor_byte=_int_value(values, 'adversary.xor') if 'adversary.xor' in values else 1)
    elif 'adversary.xor' in values:
        raise ScenarioConfigError("adversary.xor given without an adversary target")

    image_path = Path(values['image'])
    if base_dir is not None and not image_path.is_absolute():
        image_path = Path(base_dir) / image_path
    return ScenarioConfig(scheme=values['scheme'], seed=_int_value(values, 'seed'), image_path=image_path,
                          micr=values.get('micr', DEFAULT_MICR),
                          prime=_int_value(values, 'prime') if 'prime' in values else None,
                          adversary=adversary)


def load_scenario_config(path) -> ScenarioConfig:
    path = Path(path)
    return parse_scenario_config(path.read_text(), base_dir=path.parent)


@dataclass(frozen=True)
class ScenarioResult:
    config: ScenarioConfig
    outcome: object
    transcript: tuple
    captured: GrayImage
    reconstructed: Optional[GrayImage] = None
    mse: Optional[float] = None
    inquiry: Optional[InquiryResponse] = None
    holdings: tuple = field(default=(), repr=False)

    @property
    def accepted(self) -> bool:
        return isinstance(self.outcome, Accepted)

    def dumps_transcript(self) -> str:
        return dumps_transcript(self.transcript)


def run_scenario(config: ScenarioConfig, image: GrayImage = None) -> ScenarioResult:
    """
    Run the twelve clearing steps for one cheque, followed by the customer's status inquiry.

    :param image: the cheque; read from ``config.image_path`` when not given
    """
    image = image if image is not None else load_image(config.image_path)
    if config.adversary is not None:
        payload_size = packed_payload_size(config.scheme, image.width, image.height)
        if config.adversary.offset >= payload_size:
            raise ScenarioConfigError(f"tamper offset {config.adversary.offset} outside the "
                                      f"{payload_size}-byte share payload")
    _logger.info(f"Running {config.scheme.label} scenario with seed {config.seed}"
                 f"{'' if config.adversary is None else f' and {config.adversary}'}")

    rng = SeededRandom(config.seed)
    network = Network(adversary=config.adversary)
    customer = Customer(image)
    bank = PresentingBank(config.scheme, rng, micr=config.micr, prime=config.prime)
    drawee_chi = DraweeCHI()
    for participant in [customer, bank, PresentingCHI(bank), ClearingHouse(), drawee_chi, DraweeBank()]:
        network.register(participant)

    customer.submit(network)
    network.run()
    customer.inquire(network)
    network.run()

    outcome = drawee_chi.outcome
    if outcome is None:
        raise RuntimeError("workflow ended before the drawee CHI reached a verdict")
    reconstructed = drawee_chi.reconstructed
    return ScenarioResult(config=config, outcome=outcome, transcript=tuple(network.transcript),
                          captured=bank.captured, reconstructed=reconstructed,
                          mse=mse(bank.captured, reconstructed) if reconstructed is not None else None,
                          inquiry=bank.inquiry_response, holdings=tuple(network.holdings))


def run_scenarios(configs, progress: bool = True) -> list:
    return [run_scenario(config) for config in tqdm(list(configs), desc='scenarios', disable=not progress)]
