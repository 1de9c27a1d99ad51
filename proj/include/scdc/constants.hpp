#pragma once

#include <cstdint>

// Every tunable constant in the library lives here. Reports and manifests echo
// kConstantsVersion so a result can be tied to the constants it was produced
// under. Calibrated bounds (the *LawC values) are asserted by the test suites;
// changing one invalidates previously published certificates.
namespace scdc::constants {

inline constexpr int kConstantsVersion = 1;
inline constexpr const char* kSchemaVersion = "scdc/1";
inline constexpr uint8_t kCodewordFileVersion = 1;

// Fingerprint graph rule. With J = ceil(log2(1/eps)):
//   d = ceil(log2(ceil(log2 n) + k + J)) + kSeedSlack
//   m = k + d + J
// d is the seed length of the first-stage graph, m its output width. m <= 63
// keeps right nodes in one machine word; the library rejects anything wider.
inline constexpr int kSeedSlack = 1;
inline constexpr int kMaxGraphOutputBits = 63;

// Public family seed shared by compressor and decompressor. Both sides must
// derive the identical graph or nothing roundtrips.
inline constexpr uint64_t kFingerprintFamilySeed = 0x5cdc0c0de5eedULL;

// Field prime for the keyed polynomial hash in seeded-family graphs.
inline constexpr uint64_t kHashFieldPrime = (1ull << 61) - 1;

// Codeword overhead law (checked on the acceptance grid): total fingerprint
// codeword length <= log2(1/delta) +
//   kLengthLawC * (log2 n + (log2 log2(1/delta) + log2(1/eps)) * log2 log2(1/delta))
inline constexpr double kLengthLawC = 8.0;

// Certificate law: gammaRkt <= 2*log2(1/delta) + kCertLawC * deltaBits, where
// deltaBits is the deterministic fingerprint overhead for the parameters. The
// representation a certificate measures includes the sampler's own code bits,
// so the calibrated constant covers that charge too.
inline constexpr double kCertLawC = 4.0;

// Decoder work law: tD <= K * 2^(kTimeLawC * deltaBits) * n^2.
inline constexpr double kTimeLawC = 1.0;

// Micro-step cost model. Declared sampler step formulas, compressor and
// decompressor accounting all use these units; certificates compare against
// them, so they are part of the wire-visible contract.
inline constexpr uint64_t kStepBase = 8;        // fixed dispatch cost per run
inline constexpr uint64_t kStepPerBit = 1;      // emit or read one bit
inline constexpr uint64_t kStepGraphEval = 4;   // one seeded-family evaluation
inline constexpr uint64_t kStepHashCheck = 16;  // one residue comparison
inline constexpr uint64_t kStepPrimeAttempt = 64;  // one primality candidate
inline constexpr uint64_t kStepPermRound = 4;   // one toy-generator round

// pktlab calibration. Asserted over the built-in battery:
//   brute-force k <= log2(1/delta) + kPktCodingC * log2(T)
//   K_toy <= pK^t_toy + kPktDescriptionGapB * ceil(log2 n)
//   hitting family index width ell = ceil(log2(1/delta)) + kPktHittingSlack
//   mixture sampler program-length margin d = kPktProgramMargin
//   m^t table domination exponent kPktDominationC
inline constexpr int kPktCodingC = 2;
inline constexpr int kPktDescriptionGapB = 3;
inline constexpr int kPktHittingSlack = 2;
inline constexpr int kPktProgramMargin = 2;
inline constexpr int kPktDominationC = 9;

// Desk-scale guards.
inline constexpr uint64_t kEnumBudget = 1ull << 24;  // exact-enumeration cap
inline constexpr uint64_t kMixtureLengthCap = 64;    // mixture sampler resamples above this

}  // namespace scdc::constants
