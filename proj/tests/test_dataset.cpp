#include <gtest/gtest.h>

#include <sstream>

#include "passcast/dataset.hpp"
#include "passcast/error.hpp"
#include "passcast/features.hpp"
#include "passcast/rng.hpp"
#include "synthetic.hpp"

using namespace passcast;

namespace {

Dataset sample(FeatureLevel level, std::size_t rows, std::uint64_t seed) {
    Dataset d;
    d.level = level;
    d.dims = feature_dims(level);
    Rng rng(seed);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto f = extract(passcast::testing::random_snapshot(rng), level, FieldSpec{});
        d.add(f.values, 1 + static_cast<int>(rng.below(11)));
    }
    return d;
}

Dataset read(const std::string& text) {
    std::istringstream in(text);
    return read_dataset_csv(in);
}

}  // namespace

TEST(DatasetCsv, RoundTrip) {
    for (FeatureLevel level : {FeatureLevel::Low, FeatureLevel::Mid, FeatureLevel::High}) {
        const Dataset d = sample(level, 40, 3);
        std::stringstream buf;
        write_dataset_csv(buf, d);
        const Dataset back = read_dataset_csv(buf);
        EXPECT_EQ(back.level, level);
        EXPECT_EQ(back.dims, d.dims);
        EXPECT_EQ(back.labels, d.labels);
        ASSERT_EQ(back.features.size(), d.features.size());
        for (std::size_t k = 0; k < d.features.size(); ++k) ASSERT_NEAR(back.features[k], d.features[k], 1e-9);
        // Shortest round-trip formatting makes it exact, not just close.
        EXPECT_EQ(back.features, d.features);
    }
}

TEST(DatasetCsv, HeaderLayout) {
    const Dataset d = sample(FeatureLevel::Low, 2, 4);
    std::stringstream buf;
    write_dataset_csv(buf, d);
    std::string line;
    std::getline(buf, line);
    EXPECT_EQ(line, "# level,low");
    std::getline(buf, line);
    EXPECT_EQ(line, "# scales,x=52.5,y=34,velocity=3,distance=130,angle=180,clip=1.5");
    std::getline(buf, line);
    EXPECT_TRUE(line.starts_with("# layout,ball_pos:2,ball_vel:2,teammate_pos:22"));
    std::getline(buf, line);
    EXPECT_TRUE(line.starts_with("f0,f1,"));
    EXPECT_TRUE(line.ends_with(",f91,label"));
}

TEST(DatasetCsv, AddRejectsWrongWidth) {
    Dataset d;
    d.dims = 3;
    EXPECT_THROW(d.add(std::vector<double>{1, 2}, 1), DimensionMismatch);
    d.add(std::vector<double>{1, 2, 3}, 2);
    EXPECT_EQ(d.size(), 1u);
    EXPECT_EQ(d.row(0)[2], 3.0);
}

TEST(DatasetCsv, MalformedInputs) {
    EXPECT_THROW(read(""), DatasetFormatError);
    EXPECT_THROW(read("# level,huge\nf0,label\n"), DatasetFormatError);
    EXPECT_THROW(read("f0,f1,target\n1,2,3\n"), DatasetFormatError);
    EXPECT_THROW(read("# level,low\nf0,f1,label\n1,2,3\n"), DatasetFormatError);
    EXPECT_THROW(read("f0,f1,label\n1,2\n"), DatasetFormatError);
    EXPECT_THROW(read("f0,f1,label\n1,x,2\n"), DatasetFormatError);
    EXPECT_THROW(read("f0,f1,label\n1,2,12\n"), DatasetFormatError);
    EXPECT_THROW(read("f0,f1,label\n1,2,0\n"), DatasetFormatError);
    EXPECT_THROW(read("f0,f1,label\n1,2,2.5\n"), DatasetFormatError);

    const Dataset ok = read("f0,f1,label\r\n1,2,3\r\n\n-0.5,1e-3,11\n");
    EXPECT_FALSE(ok.level);
    EXPECT_EQ(ok.size(), 2u);
    EXPECT_EQ(ok.labels[1], 11);
    EXPECT_EQ(ok.row(1)[1], 1e-3);
}
