// Copyright 2026 The convexfam Authors
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

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "convexfam/io.hpp"
#include "convexfam/registry.hpp"

namespace convexfam {
namespace {

const PropertyAudit& prop(const AuditReport& r, Property p) {
  return r.properties[static_cast<std::size_t>(p)];
}

AuditReport audit_one(const std::string& id, AuditOptions opt = {}) {
  auto entries = find_entries(id);
  EXPECT_EQ(entries.size(), 1u) << id;
  return audit_family(entries.front(), opt);
}

TEST(Registry, EntriesAreUniqueAndRespectTheChain) {
  const auto& all = list_families();
  EXPECT_EQ(all.size(), 38u);
  std::set<std::string> ids;
  for (const auto& e : all) {
    EXPECT_TRUE(ids.insert(e.id()).second) << e.id();
    EXPECT_TRUE(e.expected.respects_chain()) << e.id();
    EXPECT_FALSE(e.anchor.empty()) << e.id();
    bool graph_like = e.kind == Kind::graph || e.kind == Kind::digraph;
    bool allowed = graph_like ? e.order != Order::line
                              : (e.kind == Kind::dgraph ? e.order == Order::vertex : e.order == Order::line);
    EXPECT_TRUE(allowed) << e.id();
  }
}

TEST(Registry, OnlyPerfectEdgeOrderIsUnverified) {
  for (const auto& e : list_families()) {
    bool unverified = false;
    for (Property p : kProperties)
      unverified = unverified || (e.expected[p].value.has_value() && e.expected[p].source == Source::unverified);
    EXPECT_EQ(unverified, e.id() == "perfect:edge") << e.id();
  }
}

TEST(Registry, ImperfectEdgeOrderClaim) {
  auto e = find_entries("imperfect:edge").front();
  EXPECT_EQ(e.expected.convex.value, true);
  EXPECT_EQ(e.expected.hereditary.value, false);
  EXPECT_EQ(e.minima, MinimaShape::odd_hole_plus_isolated);
}

TEST(Registry, FindEntriesByFamilyAndOrder) {
  EXPECT_EQ(find_entries("connected").size(), 2u);
  EXPECT_EQ(find_entries("connected:edge").front().order, Order::edge);
  EXPECT_EQ(find_entries("connected", Order::vertex).size(), 1u);
  EXPECT_THROW(find_entries("planar"), std::invalid_argument);
  EXPECT_THROW(find_entries("sp-free:vertex"), std::invalid_argument);
}

TEST(Registry, SerializationMatchesGoldenFile) {
  std::ifstream in(std::string(CONVEXFAM_DATA_DIR) + "/registry.json");
  ASSERT_TRUE(in) << "missing data/registry.json";
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(registry_json().dump(2) + "\n", ss.str());
}

TEST(RegistryAudit, ConnectedVertexOrderMatches) {
  auto r = audit_one("connected:vertex");
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(prop(r, Property::strongly_convex).observed, true);
  EXPECT_EQ(prop(r, Property::weakly_hereditary).observed, false);
  EXPECT_GT(r.minima_checked, 0u);
}

TEST(RegistryAudit, NotTightGameFormsMatch) {
  auto r = audit_one("not-tight");
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(prop(r, Property::strongly_convex).status, Status::match);
  EXPECT_EQ(prop(r, Property::weakly_hereditary).observed, false);
}

TEST(RegistryAudit, KernelLessEdgeOrderIncludesTheCirculantCertificate) {
  auto r = audit_one("kernel-less:edge");
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(prop(r, Property::convex).observed, false);
}

TEST(RegistryAudit, UnverifiedClaimsNeverCountAsMismatch) {
  auto r = audit_one("perfect:edge");
  EXPECT_FALSE(r.has_mismatch());
  EXPECT_EQ(prop(r, Property::convex).status, Status::unverified);
  EXPECT_EQ(prop(r, Property::hereditary).status, Status::match);
}

TEST(RegistryAudit, RefutedEdgeOrderClaimsAreReported) {
  auto wheel = audit_one("chi-exceeds-omega:edge");
  EXPECT_TRUE(wheel.has_mismatch());
  EXPECT_EQ(prop(wheel, Property::convex).observed, false);
  // The witness is the 5-wheel itself: 6 vertices, 10 edges, taken whole.
  ASSERT_EQ(prop(wheel, Property::convex).witness.size(), 1u);
  EXPECT_EQ(popcount(prop(wheel, Property::convex).witness[0].edges), 10);

  auto nt = audit_one("non-ternary:edge");
  EXPECT_EQ(prop(nt, Property::strongly_convex).status, Status::match);
  EXPECT_EQ(prop(nt, Property::weakly_hereditary).status, Status::mismatch);
}

TEST(RegistryAudit, ResultsDoNotDependOnJobs) {
  AuditOptions one, three;
  three.jobs = 3;
  auto a = to_json(audit_one("connected:edge", one));
  auto b = to_json(audit_one("connected:edge", three));
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(RegistryAudit, OversizedUniversesAreRefused) {
  AuditOptions opt;
  opt.bounds.n = 9;
  EXPECT_THROW(audit_one("connected:vertex", opt), CapExceeded);
  Bounds b;
  b.max_lines = 7;
  b.alphabet = 2;
  EXPECT_THROW(detail::check_bounds(Kind::matrix, Order::line, b), CapExceeded);
}

TEST(RegistryAudit, OptionsOverrideEntryBounds) {
  auto e = find_entries("connected:vertex").front();
  AuditOptions opt;
  opt.bounds.n = 3;
  opt.has_samples = true;
  auto b = effective_bounds(e, opt);
  EXPECT_EQ(b.n, 3);
  EXPECT_EQ(b.samples, 0);
  auto r = audit_family(e, opt);
  // Graphs on 0..3 vertices up to isomorphism: 1 + 1 + 2 + 4.
  EXPECT_EQ(r.grounds, 8u);
}

}  // namespace
}  // namespace convexfam
