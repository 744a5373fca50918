//
// Copyright 2026 The impsel Authors
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
//

#include <gtest/gtest.h>

#include "impsel/mechanisms.hpp"
#include "test_util.hpp"

namespace impsel {
namespace {

using testing::star_into_one;

TEST(MechanismsTest, NeverSelects) {
  EXPECT_TRUE(select_never(star_into_one(5)).empty());
  EXPECT_EQ(additive_gap(star_into_one(5), select_never(star_into_one(5))), 4);
  EXPECT_EQ(additive_gap(DirectedGraph(4), select_never(DirectedGraph(4))), 0);
}

TEST(MechanismsTest, MaxIndegreeNaiveBreaksTiesUpward) {
  EXPECT_EQ(select_max_indegree_naive(DirectedGraph(3)).selected, 3);
  EXPECT_EQ(select_max_indegree_naive(star_into_one(5)).selected, 1);
  EXPECT_EQ(select_max_indegree_naive(DirectedGraph::from_edges(2, {{1, 2}, {2, 1}})).selected, 2);
}

TEST(MechanismsTest, FollowFixed) {
  DirectedGraph g = DirectedGraph::from_edges(4, {{1, 2}, {1, 4}, {3, 1}});
  Outcome o = select_follow_fixed(g, 1);
  EXPECT_EQ(o.selected, 4);
  EXPECT_EQ(o.selected_indegree, 1);
  EXPECT_TRUE(select_follow_fixed(DirectedGraph(3), 1).empty());
  EXPECT_THROW(select_follow_fixed(g, 5), std::invalid_argument);
}

TEST(MechanismsTest, MajorityThreshold) {
  EXPECT_EQ(select_majority_threshold(star_into_one(5)).selected, 1);
  DirectedGraph two = DirectedGraph::from_edges(5, {{2, 1}, {3, 1}, {4, 5}, {1, 5}});
  EXPECT_TRUE(select_majority_threshold(two).empty());
  EXPECT_TRUE(select_majority_threshold(DirectedGraph(5)).empty());
}

TEST(MechanismsTest, NaiveIterated) {
  EXPECT_TRUE(select_naive_iterated(DirectedGraph::from_edges(4, {{1, 2}}), 2).empty());
  EXPECT_EQ(select_naive_iterated(star_into_one(5), 2).selected, 1);
}

TEST(MechanismsTest, NaiveSimultaneous) {
  EXPECT_TRUE(select_naive_simultaneous(DirectedGraph::from_edges(4, {{1, 2}}), 2).empty());
  // Mutual edge between 1 and 2 with t = 2: 1 has indegree 3, 2 has indegree 2;
  // both lose their out-edges at once, leaving 1 at 2 and 2 at 1.
  DirectedGraph g = DirectedGraph::from_edges(6, {{1, 2}, {2, 1}, {3, 1}, {4, 1}, {5, 2}});
  EXPECT_TRUE(select_naive_simultaneous(g, 2).empty());
  EXPECT_EQ(select_naive_simultaneous(g, 1).selected, 1);
  DirectedGraph h = DirectedGraph::from_edges(6, {{1, 2}, {2, 1}, {3, 1}, {4, 1}, {6, 1}, {5, 2}});
  EXPECT_EQ(select_naive_simultaneous(h, 2).selected, 1);
}

TEST(MechanismsTest, ParseAndName) {
  for (const char* name : {"never", "max-naive", "follow:3", "majority", "naive-iter:2", "naive-sim:2", "twin:4,1"})
    EXPECT_EQ(mechanism_name(parse_mechanism(name)), name);
  EXPECT_EQ(mechanism_name(parse_mechanism("follow")), "follow:1");
  EXPECT_THROW(parse_mechanism("twin:4"), std::invalid_argument);
  EXPECT_THROW(parse_mechanism("never:1"), std::invalid_argument);
  EXPECT_THROW(parse_mechanism("naive-iter"), std::invalid_argument);
  EXPECT_THROW(parse_mechanism("naive-iter:x"), std::invalid_argument);
  EXPECT_THROW(parse_mechanism("bogus"), std::invalid_argument);
}

TEST(MechanismsTest, ValidateRanges) {
  EXPECT_THROW(validate_mechanism(parse_mechanism("twin:5,1"), 5), std::invalid_argument);
  EXPECT_THROW(validate_mechanism(parse_mechanism("twin:2,3"), 5), std::invalid_argument);
  EXPECT_THROW(validate_mechanism(parse_mechanism("follow:6"), 5), std::invalid_argument);
  EXPECT_THROW(validate_mechanism(parse_mechanism("naive-sim:0"), 5), std::invalid_argument);
  EXPECT_NO_THROW(validate_mechanism(parse_mechanism("twin:4,1"), 5));
}

TEST(MechanismsTest, SingleVertexGraphYieldsEmpty) {
  for (const char* name : {"never", "max-naive", "follow:1", "majority"})
    EXPECT_TRUE(select(parse_mechanism(name), DirectedGraph(1)).empty()) << name;
}

TEST(MechanismsTest, OutcomeReportsInputIndegree) {
  auto g = testing::cascade_graph();
  Outcome o = select(parse_mechanism("max-naive"), g);
  EXPECT_EQ(o.selected, 5);
  EXPECT_EQ(o.selected_indegree, 3);
}

}  // namespace
}  // namespace impsel
