#include "adjclose/ingest.hpp"

#include "adjclose/engine.hpp"
#include "adjclose/error.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace adjclose;

namespace {

Error parse_error(std::string_view text) {
    try {
        parse_price_csv(text);
    } catch (const Error& e) {
        return e;
    }
    throw std::runtime_error("expected a parse error");
}

Error distribution_error(std::string_view text) {
    try {
        parse_distribution_csv(text);
    } catch (const Error& e) {
        return e;
    }
    throw std::runtime_error("expected a parse error");
}

PriceHistory weekdays(std::initializer_list<std::pair<TradingDate, const char*>> bars) {
    PriceHistory h;
    for (const auto& [date, close] : bars) {
        h.bars.push_back({date, Price{close}});
    }
    return h;
}

std::string serialize(const PriceHistory& h) {
    std::ostringstream out;
    write_price_csv(h, out);
    return out.str();
}

}  // namespace

TEST(ParsePriceCsv, MinimalFile) {
    auto parsed = parse_price_csv("date,close,distribution\n2007-12-14,83.12,\n2007-12-17,83.20,\n");
    ASSERT_EQ(parsed.history.bars.size(), 2u);
    EXPECT_TRUE(parsed.history.actions.empty());
    EXPECT_TRUE(parsed.warnings.empty());
    EXPECT_EQ(parsed.history.bars[1].close, Price{"83.20"});
    EXPECT_TRUE(parsed.history.provider_adjclose.empty());
}

TEST(ParsePriceCsv, DistributionBecomesCashAction) {
    auto h = parse_price_csv("date,close,distribution\n2007-12-26,83.42,\n2007-12-27,83.20,0.2794\n").history;
    ASSERT_EQ(h.actions.size(), 1u);
    EXPECT_EQ(h.actions[0].ex_date, TradingDate(2007, 12, 27));
    EXPECT_EQ(std::get<CashDistribution>(h.actions[0].kind).amount, Price{"0.2794"});
}

TEST(ParsePriceCsv, BadDateNamesLine) {
    auto e = parse_error("date,close\n2007-12-26,83.42\n12/27/2007,83.20\n");
    EXPECT_EQ(e.code(), ErrorCode::MalformedRow);
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string{e.what()}.find("bad date"), std::string::npos);
}

TEST(ParsePriceCsv, DescendingInputIsSorted) {
    auto shuffled = parse_price_csv(adjclose::testkit::read_fixture("shy_dec2007_closes.csv")).history;
    auto ordered = parse_price_csv(adjclose::testkit::read_fixture("shy_dec2007.csv")).history;
    EXPECT_EQ(shuffled.bars, ordered.bars);
}

TEST(ParsePriceCsv, RowOrderNeverMattersProperty) {
    std::mt19937_64 rng{21};
    for (int i = 0; i < 50; ++i) {
        auto h = adjclose::testkit::random_history(rng, {1, 40, 0.2, 0.1});
        std::string text = serialize(h);
        std::vector<std::string> rows;
        std::istringstream in{text};
        std::string header;
        std::getline(in, header);
        for (std::string line; std::getline(in, line);) {
            rows.push_back(line);
        }
        std::shuffle(rows.begin(), rows.end(), rng);
        std::string shuffled = header + "\n";
        for (const auto& r : rows) {
            shuffled += r + "\r\n";
        }
        auto back = parse_price_csv(shuffled).history;
        EXPECT_EQ(back.bars, h.bars);
        EXPECT_EQ(back.actions, parse_price_csv(text).history.actions);
    }
}

TEST(ParsePriceCsv, Errors) {
    EXPECT_EQ(parse_error("").code(), ErrorCode::EmptyFile);
    EXPECT_EQ(parse_error("\n\n  \n").code(), ErrorCode::EmptyFile);
    EXPECT_EQ(parse_error("").line(), 1u);

    auto dup = parse_error("date,close\n2007-12-26,83.42\n2007-12-27,83.20\n2007-12-26,83.10\n");
    EXPECT_EQ(dup.code(), ErrorCode::DuplicateDate);
    EXPECT_EQ(dup.line(), 4u);

    EXPECT_EQ(parse_error("day,price\n").line(), 1u);
    EXPECT_EQ(parse_error("date,close,close\n").code(), ErrorCode::MalformedRow);
    EXPECT_EQ(parse_error("date,close\n2007-12-26,0\n").line(), 2u);
    EXPECT_EQ(parse_error("date,close\n2007-12-26,\n").line(), 2u);
    EXPECT_EQ(parse_error("date,close\n2007-12-26,abc\n").line(), 2u);
    EXPECT_EQ(parse_error("date,close\n2007-12-26,1,2\n").line(), 2u);
    EXPECT_EQ(parse_error("date,close\n2007-12-26,\"1,234.50\"\n").line(), 2u);
    EXPECT_EQ(parse_error("date,close,distribution\n2007-12-26,10,-1\n").line(), 2u);
    EXPECT_EQ(parse_error("date,close,split\n2007-12-26,10,0\n").line(), 2u);
    EXPECT_EQ(parse_error("date,close\n\"2007-12-26,10\n").line(), 2u);
}

TEST(ParsePriceCsv, AcceptsDollarQuotesAndCrLf) {
    auto h = parse_price_csv("\xEF\xBB\xBF" "Date,Close,Distribution\r\n\"2007-12-26\", $83.42 ,\r\n"
                             "2007-12-27,83.20,$0.2794\r\n")
                 .history;
    ASSERT_EQ(h.bars.size(), 2u);
    EXPECT_EQ(h.bars[0].close, Price{"83.42"});
    EXPECT_EQ(std::get<CashDistribution>(h.actions.at(0).kind).amount, Price{"0.2794"});
}

TEST(ParsePriceCsv, WarnsOnIgnorableAnomalies) {
    auto parsed = parse_price_csv("date,close,volume\n2007-12-26,83.42,100\n\n\n");
    ASSERT_EQ(parsed.warnings.size(), 2u);
    EXPECT_EQ(parsed.warnings[0].line, 1u);
    EXPECT_NE(parsed.warnings[0].message.find("volume"), std::string::npos);
    EXPECT_NE(parsed.warnings[1].message.find("trailing blank"), std::string::npos);
}

TEST(ParsePriceCsv, ProviderAndSplitColumns) {
    auto h = parse_price_csv("date,close,distribution,adjclose,split\n"
                             "2008-07-23,136.20,,40.10,\n2008-07-24,44.52,,39.30,3:1\n2008-07-25,45.00,,,1\n")
                 .history;
    ASSERT_EQ(h.provider_adjclose.size(), 3u);
    EXPECT_EQ(*h.provider_adjclose[0], Decimal{"40.10"});
    EXPECT_FALSE(h.provider_adjclose[2].has_value());
    EXPECT_FALSE(h.has_provider_series());
    ASSERT_EQ(h.actions.size(), 1u);
    EXPECT_EQ(std::get<Split>(h.actions[0].kind).ratio, Decimal{3});
}

TEST(ParseDistributionCsv, CashAndSplit) {
    auto actions = parse_distribution_csv("ex_date,kind,value\n2008-07-24,split,3:1\n2007-12-27,cash,0.2794\n");
    ASSERT_EQ(actions.size(), 2u);
    EXPECT_EQ(actions[0].ex_date, TradingDate(2007, 12, 27));
    EXPECT_EQ(std::get<CashDistribution>(actions[0].kind).amount, Price{"0.2794"});
    EXPECT_EQ(std::get<Split>(actions[1].kind).ratio, Decimal{3});
    EXPECT_EQ(std::get<Split>(parse_distribution_csv("ex_date,kind,value\n2005-06-09,SPLIT,3\n")[0].kind).ratio,
              Decimal{3});
}

TEST(ParseDistributionCsv, EmptyFileHasNoActions) {
    EXPECT_TRUE(parse_distribution_csv("").empty());
    EXPECT_TRUE(parse_distribution_csv("\n\n").empty());
    EXPECT_TRUE(parse_distribution_csv("ex_date,kind,value\n").empty());
}

TEST(ParseDistributionCsv, Errors) {
    auto unknown = distribution_error("ex_date,kind,value\n2007-12-27,bonus,1\n");
    EXPECT_EQ(unknown.code(), ErrorCode::UnknownKind);
    EXPECT_EQ(unknown.line(), 2u);
    EXPECT_EQ(distribution_error("date,amount\n").line(), 1u);
    EXPECT_EQ(distribution_error("ex_date,kind,value\n2007-12-27,cash,0\n").line(), 2u);
    EXPECT_EQ(distribution_error("ex_date,kind,value\n2007-12-27,split,1:1\n").line(), 2u);
    EXPECT_EQ(distribution_error("ex_date,kind,value\n2007-12-27,split,3:0\n").line(), 2u);
    EXPECT_EQ(distribution_error("ex_date,kind,value\n2007-12-27,cash\n").line(), 2u);
    EXPECT_EQ(distribution_error("ex_date,kind,value\n\n27-12-2007,cash,1\n").line(), 3u);
}

TEST(MergeActions, AttachesOnTradingDay) {
    auto h = weekdays({{TradingDate{2007, 12, 26}, "83.42"}, {TradingDate{2007, 12, 27}, "83.20"}});
    auto merged = merge_actions(h, {{TradingDate{2007, 12, 27}, CashDistribution{Price{"0.2794"}}}}, false);
    EXPECT_TRUE(merged.warnings.empty());
    ASSERT_EQ(merged.history.actions.size(), 1u);
    EXPECT_EQ(merged.history.actions[0].ex_date, TradingDate(2007, 12, 27));
}

TEST(MergeActions, SnapsWeekendForward) {
    // 2007-12-29 is a Saturday.
    auto h = weekdays({{TradingDate{2007, 12, 28}, "83.31"}, {TradingDate{2007, 12, 31}, "83.44"}});
    std::vector<CorporateAction> actions{{TradingDate{2007, 12, 29}, CashDistribution{Price{"0.1"}}}};
    auto merged = merge_actions(h, actions, true);
    ASSERT_EQ(merged.warnings.size(), 1u);
    EXPECT_EQ(merged.history.actions.at(0).ex_date, TradingDate(2007, 12, 31));

    try {
        merge_actions(h, actions, false);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ExDateNotTradingDay);
        EXPECT_EQ(e.date(), TradingDate(2007, 12, 29));
    }
}

TEST(MergeActions, SumsSameDayCash) {
    auto h = weekdays({{TradingDate{2020, 1, 2}, "90"}, {TradingDate{2020, 1, 3}, "91"}});
    auto merged = merge_actions(h,
                                {{TradingDate{2020, 1, 3}, CashDistribution{Price{"0.10"}}},
                                 {TradingDate{2020, 1, 3}, CashDistribution{Price{"0.05"}}}},
                                false);
    ASSERT_EQ(merged.history.actions.size(), 1u);
    EXPECT_EQ(std::get<CashDistribution>(merged.history.actions[0].kind).amount, Price{"0.15"});
    auto combined = growth_series(merged.history).entries[0].sigma;
    EXPECT_TRUE(relative_close(combined, Decimal{91} / (Decimal{90} - Decimal{"0.15"})));
}

TEST(MergeActions, SumsWithInFileDistributionAndWarns) {
    auto h = weekdays({{TradingDate{2020, 1, 2}, "90"}, {TradingDate{2020, 1, 3}, "91"}});
    h.actions.push_back({TradingDate{2020, 1, 3}, CashDistribution{Price{"0.10"}}});
    auto merged = merge_actions(h, {{TradingDate{2020, 1, 3}, CashDistribution{Price{"0.05"}}}}, false);
    EXPECT_EQ(merged.warnings.size(), 1u);
    EXPECT_EQ(std::get<CashDistribution>(merged.history.actions.at(0).kind).amount, Price{"0.15"});
}

TEST(MergeActions, Errors) {
    auto h = weekdays({{TradingDate{2020, 1, 2}, "90"}, {TradingDate{2020, 1, 3}, "91"}});
    auto code = [&](const std::vector<CorporateAction>& actions, bool snap) {
        try {
            merge_actions(h, actions, snap);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    EXPECT_EQ(code({{TradingDate{2019, 12, 31}, CashDistribution{Price{"1"}}}}, true),
              ErrorCode::ExDateBeforeHistoryStart);
    EXPECT_EQ(code({{TradingDate{2020, 1, 2}, CashDistribution{Price{"1"}}}}, true),
              ErrorCode::ExDateBeforeHistoryStart);
    EXPECT_EQ(code({{TradingDate{2020, 1, 6}, CashDistribution{Price{"1"}}}}, true), ErrorCode::ExDateNotTradingDay);
    EXPECT_EQ(code({{TradingDate{2020, 1, 3}, Split{Decimal{2}}}, {TradingDate{2020, 1, 3}, Split{Decimal{3}}}}, false),
              ErrorCode::DuplicateSplit);
}

TEST(MergeActions, FixtureFilesMatchCombinedFile) {
    auto closes = parse_price_csv(adjclose::testkit::read_fixture("shy_dec2007_closes.csv")).history;
    auto actions = parse_distribution_csv(adjclose::testkit::read_fixture("shy_dec2007_distributions.csv"));
    auto merged = merge_actions(closes, actions, false);
    auto combined = parse_price_csv(adjclose::testkit::read_fixture("shy_dec2007.csv")).history;
    EXPECT_EQ(merged.history.bars, combined.bars);
    EXPECT_EQ(merged.history.actions, combined.actions);
}

TEST(WriteAdjustedCsv, SingleBar) {
    auto h = weekdays({{TradingDate{2020, 1, 2}, "12.5"}});
    auto a = adjusted_series(h, TradingDate{2020, 1, 2}, Decimal{"12.5"});
    std::ostringstream out;
    write_adjusted_csv(h, a, out);
    EXPECT_EQ(out.str(), "date,close,distribution,adjclose\n2020-01-02,12.5000,,12.5000\n");
}

TEST(WriteAdjustedCsv, ShyAnchorRow) {
    auto h = parse_price_csv(adjclose::testkit::read_fixture("shy_dec2007.csv")).history;
    auto a = adjusted_series(h, TradingDate{2007, 12, 14}, Decimal{"100.000"});
    std::ostringstream out;
    write_adjusted_csv(h, a, out);
    const std::string csv = out.str();
    EXPECT_NE(csv.find("\n2007-12-14,83.1200,,100.0000\n"), std::string::npos);
    EXPECT_NE(csv.find("\n2007-12-27,83.2000,0.2794,"), std::string::npos);
    EXPECT_EQ(csv.rfind("date,close,distribution,adjclose\n", 0), 0u);

    auto back = parse_price_csv(csv).history;
    EXPECT_EQ(back.bars, h.bars);
    EXPECT_EQ(back.actions, h.actions);
    ASSERT_TRUE(back.has_provider_series());
    EXPECT_EQ(*back.provider_adjclose[10], Decimal{100});
}

TEST(WriteAdjustedCsv, SplitColumnOnlyWhenNeeded) {
    auto h = weekdays({{TradingDate{2020, 1, 2}, "30"}, {TradingDate{2020, 1, 3}, "10"}});
    h.actions.push_back({TradingDate{2020, 1, 3}, Split{Decimal{3}}});
    auto a = adjusted_series(h, TradingDate{2020, 1, 2}, Decimal{100});
    std::ostringstream out;
    write_adjusted_csv(h, a, out);
    EXPECT_EQ(out.str(), "date,close,distribution,adjclose,split\n2020-01-02,30.0000,,100.0000,\n"
                         "2020-01-03,10.0000,,100.0000,3\n");
}

TEST(WriteAdjustedCsv, RoundTripProperty) {
    std::mt19937_64 rng{22};
    for (int i = 0; i < 100; ++i) {
        auto h = adjclose::testkit::random_history(rng, {1, 100, 0.1, 0.05});
        auto a = adjusted_series(h, h.bars.front().date, Decimal{100});
        std::ostringstream out;
        write_adjusted_csv(h, a, out);
        auto back = parse_price_csv(out.str()).history;
        EXPECT_EQ(back.bars, h.bars);
        EXPECT_EQ(back.actions, h.actions);

        // serialize . parse is the identity on already-normalized text
        std::string once = serialize(back);
        EXPECT_EQ(serialize(parse_price_csv(once).history), once);
    }
}

TEST(Parsers, FuzzSmoke) {
    std::mt19937_64 rng{23};
    const std::string seed = adjclose::testkit::read_fixture("shy_dec2007_provider_missing_dividend.csv");
    std::uniform_int_distribution<int> byte(0, 255);
    for (int i = 0; i < 2000; ++i) {
        std::string text = seed;
        for (int m = 0; m < 4; ++m) {
            text[std::uniform_int_distribution<std::size_t>(0, text.size() - 1)(rng)] = static_cast<char>(byte(rng));
        }
        for (auto parse : {+[](std::string_view t) { parse_price_csv(t); },
                           +[](std::string_view t) { parse_distribution_csv(t); }}) {
            try {
                parse(text);
            } catch (const Error& e) {
                EXPECT_TRUE(e.line().has_value()) << e.what();
            }
        }
    }
}
