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


// Acceptance run. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. All randomness is seeded; reruns are identical
// apart from the timings.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "gradcheck.h"
#include "labelcrypt/classifier.h"
#include "labelcrypt/dataset.h"
#include "labelcrypt/deploy.h"
#include "labelcrypt/label_codec.h"
#include "labelcrypt/pke.h"
#include "labelcrypt/verification.h"

namespace labelcrypt {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string Fmt(const char* f, double a = 0, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// The fixed desk-scale benchmark: 4 classes, 200 rows per class for
// training, 100 per class held out, d = 8.
struct Benchmark {
  LabeledDataset train;
  LabeledDataset test;
};

Benchmark MakeBenchmark() {
  Rng rng(20260501);
  const LabeledDataset train = GenerateBlobs(BlobSpec{4, 200, 8, 3.0, 1.0}, rng);
  const LabeledDataset test = GenerateBlobs(BlobSpec{4, 100, 8, 3.0, 1.0}, rng);
  return Benchmark{train, test};
}

TrainConfig EffectivenessConfig() {
  TrainConfig cfg;
  cfg.learning_rate = 0.1;
  cfg.epochs = 60;
  cfg.batch_size = 16;
  cfg.hidden = 16;
  cfg.init_scale = 0.5;
  cfg.seed = 1;
  return cfg;
}

// Tracing and fine-tuning runs use a wider, longer-trained model so the
// record is memorized with margin.
TrainConfig TracingConfig() {
  TrainConfig cfg = EffectivenessConfig();
  cfg.epochs = 120;
  cfg.hidden = 32;
  return cfg;
}

int CountDecryptFailures(const PublicKey& pk, std::span<const SecretKey> keys,
                         int pairs, Rng& rng) {
  const GroupParams& g = pk.group;
  std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
  int failures = 0;
  for (int i = 0; i < pairs; ++i) {
    const GroupElement m = SampleElement(g, rng);
    const SecretKey& sk = keys[pick(rng)];
    if (Decrypt(g, sk, Encrypt(pk, m, rng)) != m) ++failures;
  }
  return failures;
}

int CountFakeCollisions(const PublicKey& pk, std::span<const SecretKey> keys,
                        int fakes, Rng& rng) {
  int failures = 0;
  for (int i = 0; i < fakes; ++i) {
    const Ciphertext c = Fake(pk, rng);
    std::set<GroupElement> seen;
    for (const SecretKey& sk : keys) {
      seen.insert(Decrypt(pk.group, sk, c));
    }
    if (seen.size() != keys.size()) ++failures;
  }
  return failures;
}

int CountRerandomizationFailures(const PublicKey& pk,
                                 std::span<const SecretKey> keys) {
  const GroupParams& g = pk.group;
  int failures = 0;
  for (std::uint64_t i1 = 0; i1 < g.q(); ++i1) {
    for (std::uint64_t i2 = 0; i2 < g.q(); ++i2) {
      for (std::uint64_t i3 = 0; i3 < g.q(); ++i3) {
        const Ciphertext c{g.ElementAt(i1), g.ElementAt(i2), g.ElementAt(i3)};
        for (std::uint64_t r = 0; r < g.q(); ++r) {
          const Ciphertext d = RerandomizeWithNonce(pk, c, g.Exp(r));
          for (const SecretKey& sk : keys) {
            if (Decrypt(g, sk, d) != Decrypt(g, sk, c)) ++failures;
          }
        }
      }
    }
  }
  return failures;
}

Outcome Criterion1() {
  const auto start = Clock::now();
  const GroupParams g = GroupParams::Generate(11);
  Rng rng(101);
  int failures = 0;
  int pairs = 0;
  for (int p : {1, 3, static_cast<int>(g.q())}) {
    const KeyGenResult kg = GenerateKeys(g, p, rng);
    failures += CountDecryptFailures(kg.pk, kg.keys, 1000, rng);
    pairs += 1000;
  }
  const double secs = Seconds(start);
  return {failures == 0 && secs < 1.0,
          Fmt("%.0f pairs over P in {1,3,q=11}, %.0f failures, %.3f s", pairs,
              failures, secs)};
}

Outcome Criterion2() {
  const GroupParams g = GroupParams::Generate(11);
  Rng rng(102);
  const KeyGenResult kg = GenerateKeys(g, static_cast<int>(g.q()), rng);
  const int failures = CountFakeCollisions(kg.pk, kg.keys, 1000, rng);
  return {failures == 0,
          Fmt("1000 fakes, P=%.0f keys, %.0f with a repeated decryption",
              kg.keys.size(), failures)};
}

Outcome Criterion3() {
  const GroupParams g = GroupParams::Generate(3);
  Rng rng(103);
  const KeyGenResult kg = GenerateKeys(g, 3, rng);
  const int failures = CountRerandomizationFailures(kg.pk, kg.keys);
  return {failures == 0,
          Fmt("27 ciphertexts x 3 nonces x 3 keys, %.0f mismatches", failures)};
}

Outcome Criterion4() {
  int failures = 0;
  const GroupParams g3 = GroupParams::Generate(3);
  for (std::uint64_t a = 0; a < 3; ++a) {
    for (std::uint64_t b = 0; b < 3; ++b) {
      for (std::uint64_t c = 0; c < 3; ++c) {
        const Ciphertext ct{g3.ElementAt(a), g3.ElementAt(b), g3.ElementAt(c)};
        if (PhiInverse(g3, Phi(g3, ct)) != ct) ++failures;
      }
    }
  }
  const GroupParams g11 = GroupParams::Generate(11);
  Rng rng(104);
  for (int i = 0; i < 10000; ++i) {
    const Ciphertext ct{SampleElement(g11, rng), SampleElement(g11, rng),
                        SampleElement(g11, rng)};
    if (PhiInverse(g11, Phi(g11, ct)) != ct) ++failures;
  }
  return {failures == 0,
          Fmt("27 exhaustive (q=3) + 10000 random (q=11), %.0f failures",
              failures)};
}

Outcome Criterion5() {
  Rng rng(105);
  double linear = 0;
  double hidden = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const gradcheck::Problem a = gradcheck::RandomProblem(6, 0, 5, 10, rng);
    linear = std::max(linear, gradcheck::MaxRelativeError(a.model, a.x, a.t));
    const gradcheck::Problem b = gradcheck::RandomProblem(6, 8, 5, 10, rng);
    hidden = std::max(hidden, gradcheck::MaxRelativeError(b.model, b.x, b.t));
  }
  return {linear <= 1e-5 && hidden <= 1e-5,
          Fmt("max rel. error linear %.2e, hidden %.2e (step 1e-5)", linear,
              hidden)};
}

Outcome Criterion6(const Benchmark& bench) {
  const auto start = Clock::now();
  const GroupParams g = GroupParams::Generate(4);
  Rng rng(106);
  const KeyGenResult kg = GenerateKeys(g, 3, rng);
  const TrainConfig cfg = EffectivenessConfig();
  const EncryptedDataset enc = EncryptDataset(kg.pk, bench.train, rng);
  const DeploymentHandle handle(Train(enc, cfg).model, kg.pk, 4);
  const double baseline =
      EvaluateBaseline(TrainBaseline(bench.train, cfg).model, bench.test);
  double correct = 1.0;
  for (const SecretKey& sk : kg.keys) {
    correct = std::min(correct, Evaluate(handle, bench.test, sk, rng));
  }
  double incorrect = 0.0;
  for (int i = 0; i < 10; ++i) {
    incorrect = std::max(incorrect,
                         Evaluate(handle, bench.test,
                                  SampleIncorrectKey(kg.pk, rng), rng));
  }
  const double secs = Seconds(start);
  const bool pass = std::abs(correct - baseline) <= 0.03 &&
                    incorrect <= 0.375 && secs < 60.0;
  return {pass, Fmt("baseline %.4f, correct key (worst of 3) %.4f, incorrect "
                    "key (worst of 10) %.4f, %.1f s",
                    baseline, correct, incorrect, secs)};
}

Outcome Criterion7(const Benchmark& bench) {
  const GroupParams g = GroupParams::Generate(4);
  Rng rng(107);
  const KeyGenResult kg = GenerateKeys(g, 3, rng);
  TracingOptions options;
  options.trials = 30;
  options.train = TracingConfig();
  const TracingReport report =
      RunTracingTrials(kg.pk, kg.keys, bench.train, options, rng);
  return {report.matches() >= 29,
          Fmt("leaker identified in %.0f/30 trials (P=3)", report.matches())};
}

Outcome Criterion8(const Benchmark& bench) {
  const GroupParams g = GroupParams::Generate(4);
  Rng rng(108);
  const KeyGenResult kg = GenerateKeys(g, 3, rng);
  const EncryptedDataset enc = EncryptDataset(kg.pk, bench.train, rng);
  const EncryptedDataset injected = Inject(
      enc,
      MakeVerificationRecord(kg.pk, kg.keys,
                             UniformProbe(bench.train.features, rng), rng),
      DefaultReplication(enc.size()));
  const TrainConfig cfg = TracingConfig();
  const ModelParams model = Train(injected, cfg).model;
  TrainConfig ft = cfg;
  ft.epochs = 10;
  ft.learning_rate = 0.02;
  ft.seed = cfg.seed + 1000;
  const ArbitrationContext ctx{kg.pk, 4, kg.keys, injected.records};
  const AttackReport report =
      FinetuneAttack(ctx, model, injected, 5, ft, bench.test, rng);
  double worst_verification = 1.0;
  double worst_drift = 0.0;
  for (const AttackRound& r : report.rounds) {
    worst_verification = std::min(worst_verification, r.verification_success);
    worst_drift =
        std::max(worst_drift, std::abs(r.accuracy - report.initial_accuracy));
  }
  return {worst_verification >= 0.97 && worst_drift <= 0.05 &&
              report.rounds.size() == 5,
          Fmt("5 rounds: min verification %.3f, pre-attack accuracy %.4f, max "
              "drift %.4f",
              worst_verification, report.initial_accuracy, worst_drift)};
}

Outcome Criterion9(const Benchmark& bench) {
  std::vector<std::string> notes;
  bool pass = true;

  // (1) and (2) at q = 11: P = 3, then a fourth key; ciphertexts made
  // before the new key existed must decrypt under it.
  {
    const GroupParams g = GroupParams::Generate(11);
    Rng rng(109);
    KeyGenResult kg = GenerateKeys(g, 3, rng);
    std::vector<std::pair<GroupElement, Ciphertext>> old;
    for (int i = 0; i < 200; ++i) {
      const GroupElement m = SampleElement(g, rng);
      old.emplace_back(m, Encrypt(kg.pk, m, rng));
    }
    kg.keys.push_back(AddUser(kg.pk, kg.authority, rng));
    int failures = CountDecryptFailures(kg.pk, kg.keys, 1000, rng);
    for (const auto& [m, c] : old) {
      if (Decrypt(g, kg.keys.back(), c) != m) ++failures;
    }
    const int collisions = CountFakeCollisions(kg.pk, kg.keys, 1000, rng);
    pass = pass && failures == 0 && collisions == 0;
    notes.push_back(Fmt("c1 %.0f fail, c2 %.0f fail", failures, collisions));
  }
  // (3) at q = 3: two keys, then the third.
  {
    const GroupParams g = GroupParams::Generate(3);
    Rng rng(110);
    KeyGenResult kg = GenerateKeys(g, 2, rng);
    kg.keys.push_back(AddUser(kg.pk, kg.authority, rng));
    const int failures = CountRerandomizationFailures(kg.pk, kg.keys);
    pass = pass && failures == 0;
    notes.push_back(Fmt("c3 %.0f fail", failures));
  }
  // (7): the 30 models are trained while only three keys exist. The fourth
  // key is issued afterwards and the arbitrator extends each record from
  // its stored ill-formed ciphertext; nothing is retrained.
  {
    const GroupParams g = GroupParams::Generate(4);
    Rng rng(111);
    KeyGenResult kg = GenerateKeys(g, 3, rng);
    const EncryptedDataset enc = EncryptDataset(kg.pk, bench.train, rng);
    const int copies = DefaultReplication(enc.size());
    std::vector<ModelParams> models;
    std::vector<VerificationRecord> records;
    for (int trial = 1; trial <= 30; ++trial) {
      VerificationRecord rec = MakeVerificationRecord(
          kg.pk, kg.keys, UniformProbe(bench.train.features, rng), rng);
      TrainConfig cfg = TracingConfig();
      cfg.seed += static_cast<std::uint64_t>(trial);
      models.push_back(Train(Inject(enc, rec, copies), cfg).model);
      records.push_back(std::move(rec));
    }
    kg.keys.push_back(AddUser(kg.pk, kg.authority, rng));
    std::uniform_int_distribution<std::size_t> pick(0, kg.keys.size() - 1);
    int hits = 0;
    for (std::size_t i = 0; i < models.size(); ++i) {
      const VerificationRecord extended = MakeVerificationRecordFromFake(
          kg.pk, kg.keys, records[i].probe, records[i].fake);
      const ArbitrationContext ctx{kg.pk, 4, kg.keys, {extended}};
      const DeploymentHandle handle(models[i], kg.pk, 4);
      const SecretKey& leaked = kg.keys[pick(rng)];
      const std::optional<int> id =
          VerifyLeak(ctx, 0, ObserveSuspect(handle, leaked, extended.probe, rng));
      if (id && *id == leaked.id) ++hits;
    }
    pass = pass && hits >= 29;
    notes.push_back(Fmt("c7 %.0f/30 with P+1=4 keys", hits));
  }
  std::string detail;
  for (const std::string& n : notes) detail += (detail.empty() ? "" : "; ") + n;
  return {pass, detail};
}

Outcome Criterion10(const Benchmark& bench) {
  double lo = 1.0;
  double hi = 0.0;
  std::string detail;
  for (std::uint64_t q : {5, 11, 23}) {
    const GroupParams g = GroupParams::Generate(q);
    Rng rng(110 + q);
    const KeyGenResult kg = GenerateKeys(g, 3, rng);
    const EncryptedDataset enc = EncryptDataset(kg.pk, bench.train, rng);
    const DeploymentHandle handle(Train(enc, EffectivenessConfig()).model,
                                  kg.pk, 4);
    const double acc = Evaluate(handle, bench.test, kg.keys[0], rng);
    lo = std::min(lo, acc);
    hi = std::max(hi, acc);
    detail += Fmt("q=%.0f %.4f, ", q, acc);
  }
  detail += Fmt("band %.4f", hi - lo);
  return {hi - lo <= 0.05, detail};
}

Outcome Criterion11() {
  bool pass = true;
  std::string detail;
  for (std::uint64_t q : {5, 11}) {
    const GroupParams g = GroupParams::Generate(q);
    Rng rng(111 + q);
    const KeyGenResult kg = GenerateKeys(g, 3, rng);
    const GroupElement m = g.ElementAt(1);
    std::vector<std::vector<int>> counts(3, std::vector<int>(q, 0));
    constexpr int kDraws = 10000;
    for (int i = 0; i < kDraws; ++i) {
      const Ciphertext c = Encrypt(kg.pk, m, rng);
      ++counts[0][g.IndexOf(c.u1)];
      ++counts[1][g.IndexOf(c.u2)];
      ++counts[2][g.IndexOf(c.u3)];
    }
    const boost::math::chi_squared dist(static_cast<double>(q - 1));
    const double critical = boost::math::quantile(complement(dist, 0.001));
    const double expected = static_cast<double>(kDraws) / static_cast<double>(q);
    double worst = 0;
    for (const auto& coord : counts) {
      double stat = 0;
      for (int c : coord) stat += (c - expected) * (c - expected) / expected;
      worst = std::max(worst, stat);
    }
    pass = pass && worst < critical;
    detail += Fmt("q=%.0f max chi2 %.2f < %.2f; ", q, worst, critical);
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

}  // namespace
}  // namespace labelcrypt

int main() {
  using namespace labelcrypt;
  const Benchmark bench = MakeBenchmark();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"PKE correctness (i)", Criterion1},
      {"PKE correctness (ii)", Criterion2},
      {"rerandomization invariance", Criterion3},
      {"codec round trip", Criterion4},
      {"gradient check", Criterion5},
      {"effectiveness", [&] { return Criterion6(bench); }},
      {"leak verification", [&] { return Criterion7(bench); }},
      {"fine-tuning attack", [&] { return Criterion8(bench); }},
      {"incremental user", [&] { return Criterion9(bench); }},
      {"q sweep", [&] { return Criterion10(bench); }},
      {"ciphertext uniformity", Criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
