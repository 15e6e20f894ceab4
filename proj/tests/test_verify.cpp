// Copyright 2026 The PEv Simulator Authors
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

#include <algorithm>

#include <gtest/gtest.h>

#include "pev/verify.hpp"

namespace pev::verify {
namespace {

TEST(Verify, AllChecksPass) {
    const auto report = run();
    EXPECT_TRUE(report.passed());
    std::vector<std::string> groups;
    for (const auto &c : report.checks) {
        EXPECT_TRUE(c.passed) << c.group << '/' << c.name << ": " << c.detail;
        groups.push_back(c.group);
    }
    for (auto g : kGroups) {
        EXPECT_NE(std::find(groups.begin(), groups.end(), std::string(g)), groups.end()) << g;
    }
}

TEST(Verify, OnlyFilter) {
    const auto report = run({"fock", std::nullopt});
    ASSERT_FALSE(report.checks.empty());
    for (const auto &c : report.checks) {
        EXPECT_EQ(c.group, "fock");
    }
    EXPECT_THROW(run({"nonsense", std::nullopt}), RangeError);
}

TEST(Verify, InjectedFaultIsDetected) {
    const auto report = run({"tables", "table1"});
    EXPECT_FALSE(report.passed());
    const auto it = std::find_if(report.checks.begin(), report.checks.end(),
                                 [](const Check &c) { return c.name.starts_with("table1"); });
    ASSERT_NE(it, report.checks.end());
    EXPECT_FALSE(it->passed);
    EXPECT_THROW(run({"tables", "nonsense"}), RangeError);
}

} // namespace
} // namespace pev::verify
