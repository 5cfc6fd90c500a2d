from sisct.commitments.hashing import DEFAULT_HASH_ID, hash_pool, share_hash
from sisct.commitments.params import (DEFAULT_PRIME, UNREADABLE_RESIDUAL, ClaimError, ParamsError,
                                      ParticipantVerdict, PublicParams, VerificationReport, Verdict, check_prime,
                                      default_prime, dumps_params, loads_params, make_params, random_prime, verify)
from sisct.commitments.radix import encode_plain, encode_spaced, radix_digit
