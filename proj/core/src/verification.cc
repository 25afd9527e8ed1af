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

#include "labelcrypt/verification.h"

#include <string>

#include "labelcrypt/error.h"

namespace labelcrypt {

void ArbitrationContext::Validate() const {
  if (keys.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "arbitrator holds no keys");
  }
  for (const VerificationRecord& record : records) {
    for (const SecretKey& sk : keys) {
      if (!record.expected.contains(sk.id)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "record has no expected value for key " +
                        std::to_string(sk.id));
      }
    }
  }
}

std::optional<int> VerifyKey(const ArbitrationContext& ctx,
                             const SecretKey& sk) {
  for (const SecretKey& issued : ctx.keys) {
    if (issued.a == sk.a && issued.b == sk.b) return issued.id;
  }
  return std::nullopt;
}

std::optional<int> VerifyLeak(const ArbitrationContext& ctx,
                              std::size_t record_index,
                              std::uint64_t observed) {
  if (record_index >= ctx.records.size()) {
    throw Error(ErrorCode::kUnknownRecord,
                "no verification record #" + std::to_string(record_index));
  }
  for (const auto& [id, expected] : ctx.records[record_index].expected) {
    if (expected == observed) return id;
  }
  return std::nullopt;
}

std::uint64_t ObserveSuspect(const DeploymentHandle& handle,
                             const SecretKey& leaked,
                             std::span<const double> probe, Rng& rng) {
  const ConfusedLabel emitted = DeployPredict(handle, probe, rng);
  return DecryptToIndex(handle.pk().group, leaked, emitted.values);
}

double VerificationSuccess(const ArbitrationContext& ctx,
                           const DeploymentHandle& handle, Rng& rng) {
  std::size_t hits = 0;
  std::size_t total = 0;
  for (std::size_t r = 0; r < ctx.records.size(); ++r) {
    for (const SecretKey& sk : ctx.keys) {
      const std::uint64_t observed =
          ObserveSuspect(handle, sk, ctx.records[r].probe, rng);
      const std::optional<int> id = VerifyLeak(ctx, r, observed);
      if (id && *id == sk.id) ++hits;
      ++total;
    }
  }
  return total == 0 ? 0.0
                    : static_cast<double>(hits) / static_cast<double>(total);
}

int TracingReport::matches() const {
  int n = 0;
  for (const TracingTrial& t : trials) n += t.match ? 1 : 0;
  return n;
}

double TracingReport::accuracy() const {
  return trials.empty() ? 0.0
                        : static_cast<double>(matches()) /
                              static_cast<double>(trials.size());
}

TracingReport RunTracingTrials(const PublicKey& pk,
                               std::span<const SecretKey> keys,
                               const LabeledDataset& train,
                               const TracingOptions& options, Rng& rng) {
  if (keys.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "tracing needs at least two issued keys");
  }
  const EncryptedDataset encrypted = EncryptDataset(pk, train, rng);
  const int replication = options.replication > 0
                              ? options.replication
                              : DefaultReplication(train.size());
  TracingReport report;
  for (int trial = 1; trial <= options.trials; ++trial) {
    VerificationRecord record = MakeVerificationRecord(
        pk, keys, UniformProbe(train.features, rng), rng);
    const EncryptedDataset injected =
        Inject(encrypted, std::move(record), replication);

    TrainConfig cfg = options.train;
    cfg.seed = options.train.seed + static_cast<std::uint64_t>(trial);
    const DeploymentHandle handle(Train(injected, cfg).model, pk,
                                  train.num_classes);
    const ArbitrationContext ctx{pk, train.num_classes,
                                 {keys.begin(), keys.end()}, injected.records};

    const auto pick =
        std::uniform_int_distribution<std::size_t>(0, keys.size() - 1)(rng);
    const SecretKey& leaked = keys[pick];
    TracingTrial t;
    t.trial = trial;
    t.leaker = leaked.id;
    t.observed = ObserveSuspect(handle, leaked, ctx.records[0].probe, rng);
    t.identified = VerifyLeak(ctx, 0, t.observed);
    t.match = t.identified && *t.identified == leaked.id;
    report.trials.push_back(t);
  }
  return report;
}

void WriteTracingReport(const TracingReport& report, std::ostream& out) {
  out << "trial,leaker,observed,identified,match\n";
  for (const TracingTrial& t : report.trials) {
    out << t.trial << ',' << t.leaker << ',' << t.observed << ','
        << (t.identified ? std::to_string(*t.identified) : "none") << ','
        << (t.match ? 1 : 0) << '\n';
  }
  out << "# identified " << report.matches() << '/' << report.trials.size()
      << " accuracy=" << report.accuracy() << '\n';
}

AttackReport FinetuneAttack(const ArbitrationContext& ctx, ModelParams model,
                            const EncryptedDataset& dataset, int parts,
                            const TrainConfig& cfg, const LabeledDataset& test,
                            Rng& rng) {
  ctx.Validate();
  const std::size_t n = dataset.original_size();
  if (parts < 1 || static_cast<std::size_t>(parts) > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot split " + std::to_string(n) + " rows into " +
                    std::to_string(parts) + " parts");
  }
  const Matrix targets = ConfusedTargets(dataset);
  const SecretKey& owner = ctx.keys.front();

  AttackReport report;
  {
    const DeploymentHandle handle(model, ctx.pk, ctx.num_classes);
    report.initial_accuracy = Evaluate(handle, test, owner, rng);
    report.initial_verification = VerificationSuccess(ctx, handle, rng);
  }
  for (int round = 1; round <= parts; ++round) {
    const std::size_t begin = n * static_cast<std::size_t>(round - 1) / parts;
    const std::size_t end = n * static_cast<std::size_t>(round) / parts;
    Matrix shard_x(0, dataset.dim());
    Matrix shard_t(0, targets.cols);
    for (std::size_t i = begin; i < end; ++i) {
      shard_x.AppendRow(dataset.features.row(i));
      shard_t.AppendRow(targets.row(i));
    }
    TrainConfig round_cfg = cfg;
    round_cfg.seed = cfg.seed + static_cast<std::uint64_t>(round);
    model = Fit(std::move(model), shard_x, shard_t, round_cfg).model;

    const DeploymentHandle handle(model, ctx.pk, ctx.num_classes);
    AttackRound r;
    r.round = round;
    r.accuracy = Evaluate(handle, test, owner, rng);
    r.verification_success = VerificationSuccess(ctx, handle, rng);
    report.rounds.push_back(r);
  }
  return report;
}

void WriteAttackReport(const AttackReport& report, std::ostream& out) {
  out << "round,accuracy,verification\n";
  out << 0 << ',' << report.initial_accuracy << ','
      << report.initial_verification << '\n';
  for (const AttackRound& r : report.rounds) {
    out << r.round << ',' << r.accuracy << ',' << r.verification_success
        << '\n';
  }
}

}  // namespace labelcrypt
