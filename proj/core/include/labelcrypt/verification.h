// Copyright 2026 The labelcrypt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Arbitration: deciding which issued key a suspect deployment is using.
//
// With the key in hand, VerifyKey() is an exact lookup. Without it, the
// arbitrator queries the suspect with a record's probe input; a model that
// memorized the record emits (a rerandomization of) the ill-formed
// ciphertext, the suspect's leaked key decrypts it, and because every key
// decrypts that ciphertext differently the readable output names the key.

#ifndef LABELCRYPT_VERIFICATION_H_
#define LABELCRYPT_VERIFICATION_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "labelcrypt/classifier.h"
#include "labelcrypt/dataset.h"
#include "labelcrypt/deploy.h"
#include "labelcrypt/pke.h"

namespace labelcrypt {

struct ArbitrationContext {
  PublicKey pk;
  int num_classes = 0;
  std::vector<SecretKey> keys;
  std::vector<VerificationRecord> records;

  // Throws kInvalidArgument if keys is empty or a record misses a key id.
  void Validate() const;
};

// Id of the issued key with exactly this (a, b), ignoring sk.id.
std::optional<int> VerifyKey(const ArbitrationContext& ctx, const SecretKey& sk);

// The unique key id whose expected decryption of record `record_index`
// equals `observed`. Throws kUnknownRecord for a bad index.
std::optional<int> VerifyLeak(const ArbitrationContext& ctx,
                              std::size_t record_index, std::uint64_t observed);

// What a deployment running with `leaked` outputs for `probe`: the group
// index of its decryption of the emitted confused label.
std::uint64_t ObserveSuspect(const DeploymentHandle& handle,
                             const SecretKey& leaked,
                             std::span<const double> probe, Rng& rng);

// Fraction of (record, key) pairs for which a suspect holding that key is
// identified correctly.
double VerificationSuccess(const ArbitrationContext& ctx,
                           const DeploymentHandle& handle, Rng& rng);

struct TracingTrial {
  int trial = 0;
  int leaker = 0;
  std::uint64_t observed = 0;
  std::optional<int> identified;
  bool match = false;
};

struct TracingReport {
  std::vector<TracingTrial> trials;

  int matches() const;
  double accuracy() const;
};

struct TracingOptions {
  int trials = 30;
  int replication = 0;  // 0: DefaultReplication(N)
  TrainConfig train;
};

// The full experiment, once per trial: fresh probe and ill-formed
// ciphertext, inject, train from scratch (seed = train.seed + trial), pick a
// random leaker, observe the suspect and identify it. `keys` needs >= 2.
TracingReport RunTracingTrials(const PublicKey& pk,
                               std::span<const SecretKey> keys,
                               const LabeledDataset& train,
                               const TracingOptions& options, Rng& rng);

void WriteTracingReport(const TracingReport& report, std::ostream& out);

struct AttackRound {
  int round = 0;
  double accuracy = 0.0;
  double verification_success = 0.0;
};

struct AttackReport {
  double initial_accuracy = 0.0;
  double initial_verification = 0.0;
  std::vector<AttackRound> rounds;
};

// Splits the non-injected rows of `dataset` into `parts` contiguous shards
// and fine-tunes `model` on each in turn (seed = cfg.seed + round), scoring
// correct-key accuracy on `test` (with ctx.keys[0]) and tracing success after
// every round.
AttackReport FinetuneAttack(const ArbitrationContext& ctx, ModelParams model,
                            const EncryptedDataset& dataset, int parts,
                            const TrainConfig& cfg, const LabeledDataset& test,
                            Rng& rng);

void WriteAttackReport(const AttackReport& report, std::ostream& out);

}  // namespace labelcrypt

#endif  // LABELCRYPT_VERIFICATION_H_
