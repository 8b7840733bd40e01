// Copyright 2026 The fcfsim Authors
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

#include <fcfsim/fcf_table.hpp>

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace fcfsim;

TEST(fcf_table, method_names_round_trip) {
    for (auto m : {FcfMethod::analytic, FcfMethod::oracle, FcfMethod::direct, FcfMethod::tomography,
                   FcfMethod::moussa}) {
        EXPECT_EQ(parse_method(to_string(m)), m);
    }
    EXPECT_FALSE(parse_method("exact").has_value());
}

TEST(fcf_table, csv_round_trip_is_lossless) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    FcfTable table;
    for (int i = 0; i < 200; ++i) {
        table.add(i % 4, (i / 4) % 4, 4.0 * uni(rng), uni(rng), static_cast<FcfMethod>(i % 5));
    }
    std::ostringstream first;
    write_csv(first, table);
    std::istringstream in(first.str());
    const FcfTable back = read_csv(in);
    ASSERT_EQ(back.size(), table.size());
    std::ostringstream second;
    write_csv(second, back);
    EXPECT_EQ(first.str(), second.str());
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_NEAR(back.entries()[i].value, table.entries()[i].value, 1e-11);
    }
}

TEST(fcf_table, header_and_format) {
    FcfTable table;
    table.add(0, 1, 3.0 / 11.0, 0.1, FcfMethod::direct);
    std::ostringstream out;
    write_csv(out, table);
    EXPECT_EQ(out.str(), "m,n,b,value,method\n0,1,0.272727272727,0.1,direct\n");
}

TEST(fcf_table, reader_rejects_malformed_input) {
    std::istringstream no_header("0,1,0.5,0.2,direct\n");
    EXPECT_THROW(read_csv(no_header), std::runtime_error);
    std::istringstream bad_method("m,n,b,value,method\n0,1,0.5,0.2,guess\n");
    EXPECT_THROW(read_csv(bad_method), std::runtime_error);
    std::istringstream bad_number("m,n,b,value,method\n0,1,x,0.2,direct\n");
    EXPECT_THROW(read_csv(bad_number), std::runtime_error);
    std::istringstream comments("# meta\nm,n,b,value,method\n# more\n2,3,1,0.25,moussa\n");
    const auto t = read_csv(comments);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t.entries()[0], (FcfEntry{2, 3, 1.0, 0.25, FcfMethod::moussa}));
}

TEST(fcf_table, range_check_and_lookup) {
    FcfTable table;
    table.add(0, 0, 1.0, 0.5, FcfMethod::direct);
    table.add(0, 1, 1.0, 1.0 + 1e-10, FcfMethod::direct);
    table.add(0, 2, 1.0, -1e-3, FcfMethod::tomography);
    table.add(0, 3, 1.0, 1.1, FcfMethod::tomography);
    EXPECT_EQ(table.out_of_range().size(), 2u);
    EXPECT_EQ(table.find(0, 0, 1.0), 0.5);
    EXPECT_FALSE(table.find(1, 0, 1.0).has_value());
}
