#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "dow/errors.hpp"

namespace dow {

/// Per-model ranks across a set of conceptual criteria. Rank 1 is best; ties
/// are accepted verbatim and scored with the same n+1-rank rule.
struct RankingTable {
    std::vector<std::string> models;
    std::vector<std::string> criteria;
    std::vector<std::vector<int>> ranks;  // ranks[model][criterion]

    void validate() const {
        if (models.empty() || criteria.empty())
            throw EmptyInput("RankingTable: no models or criteria");
        if (ranks.size() != models.size())
            throw InvalidRank("RankingTable: rank rows do not match models");
        const int n = static_cast<int>(models.size());
        for (const auto& row : ranks) {
            if (row.size() != criteria.size())
                throw InvalidRank("RankingTable: rank row length mismatch");
            for (int r : row)
                if (r < 1 || r > n)
                    throw InvalidRank("RankingTable: rank " + std::to_string(r) +
                                      " outside 1.." + std::to_string(n));
        }
    }
};

/// Reverse scoring: rank r among n models is worth n+1-r points; a model's
/// score is the sum over criteria.
inline std::vector<int> scores_from_ranks(const RankingTable& table) {
    table.validate();
    const int n = static_cast<int>(table.models.size());
    std::vector<int> scores(table.models.size(), 0);
    for (std::size_t m = 0; m < table.models.size(); ++m)
        for (int r : table.ranks[m]) scores[m] += n + 1 - r;
    return scores;
}

/// Posterior probability of each model: score / total score.
inline std::vector<double> posteriors(std::span<const int> scores) {
    if (scores.empty()) throw EmptyInput("posteriors: no scores");
    long total = 0;
    for (int s : scores) {
        if (s <= 0) throw NonpositiveScore("posteriors: scores must be > 0");
        total += s;
    }
    std::vector<double> p(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i)
        p[i] = static_cast<double>(scores[i]) / static_cast<double>(total);
    return p;
}

/// Parse a ranking table from comma-separated text: one header row naming the
/// criteria (first column is the model-name column), then one row per model.
inline RankingTable parse_ranking_table(std::istream& in) {
    RankingTable table;
    std::string line;
    bool header_done = false;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            const auto b = cell.find_first_not_of(" \t");
            const auto e = cell.find_last_not_of(" \t");
            cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
        }
        if (!header_done) {
            if (cells.size() < 2) throw ConfigError("ranking table: header too short");
            table.criteria.assign(cells.begin() + 1, cells.end());
            header_done = true;
            continue;
        }
        if (cells.size() != table.criteria.size() + 1)
            throw ConfigError("ranking table: row '" + line + "' has wrong arity");
        table.models.push_back(cells[0]);
        std::vector<int> row;
        for (std::size_t i = 1; i < cells.size(); ++i) {
            try {
                row.push_back(std::stoi(cells[i]));
            } catch (const std::exception&) {
                throw ConfigError("ranking table: non-integer rank '" + cells[i] + "'");
            }
        }
        table.ranks.push_back(std::move(row));
    }
    table.validate();
    return table;
}

/// The shipped default dataset: six interpretations ranked across four
/// conceptual criteria.
inline RankingTable default_ranking_table() {
    RankingTable t;
    t.criteria = {"Coherence", "Explanatory Power", "Simplicity", "Ontological Clarity"};
    t.models = {"Copenhagen", "Many-Worlds", "Bohmian mechanics", "GRW", "Epistemic", "DOW"};
    t.ranks = {
        {5, 2, 3, 6},
        {3, 5, 4, 3},
        {3, 6, 5, 3},
        {2, 4, 2, 2},
        {6, 3, 6, 5},
        {1, 1, 1, 1},
    };
    return t;
}

}  // namespace dow
