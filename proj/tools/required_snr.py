#!/usr/bin/env python3
"""Required SNR per modulation format at a target pre-FEC BER.

Uses the Gray-coded QAM approximation
    BER = (2 / log2 M) (1 - 1/sqrt(M)) erfc(sqrt(3 SNR / (2 (M - 1))))
and solves for SNR by bisection. Prints the values in dB, rounded as they
appear in the default physical-layer configuration.
"""

import argparse
import math

FORMATS = [("QPSK", 2), ("8QAM", 3), ("16QAM", 4), ("32QAM", 5), ("64QAM", 6)]


def ber(bits, snr):
    m = 2.0 ** bits
    return 2.0 / bits * (1.0 - 1.0 / math.sqrt(m)) * math.erfc(math.sqrt(3.0 * snr / (2.0 * (m - 1.0))))


def required_snr_db(bits, target):
    lo, hi = -10.0, 40.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if ber(bits, 10.0 ** (mid / 10.0)) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--ber", type=float, default=2.4e-2)
    args = parser.parse_args()
    for name, bits in FORMATS:
        print(f"{name:6s} {required_snr_db(bits, args.ber):.4f}")


if __name__ == "__main__":
    main()
