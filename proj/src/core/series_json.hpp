// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>
#include <string>

#include "core/series.hpp"

namespace ellforge {

using Json = nlohmann::ordered_json;
using QSeries = Series<Rational>;

// {"var","min","trunc","coeffs"}; an exact series has "trunc": null.
// Rational coefficients are [e, "p/q"], Gaussian ones [e, "p/q", "r/s"],
// series-valued coefficients [e, {...}].
Json to_json(const Series<Rational>& s);
Json to_json(const Series<GaussianRational>& s);
Json to_json(const Series<QSeries>& s);
// {"vars":[...],"trunc":D,"coeffs":[[[i,j,...], coeff], ...]}
Json to_json(const MultiSeries<Rational>& s);
Json to_json(const MultiSeries<QSeries>& s);
Json to_json(const MultiSeries<GaussianRational>& s);
Json to_json(const MultiSeries<Series<GaussianRational>>& s);

Series<Rational> rational_series_from_json(const Json& j);
Series<GaussianRational> gaussian_series_from_json(const Json& j);
Series<QSeries> nested_series_from_json(const Json& j);
MultiSeries<QSeries> multi_qseries_from_json(const Json& j);

bool json_is_gaussian_series(const Json& j);

// Compact canonical dump used for bit-exact round trips.
std::string dump_canonical(const Json& j);

}  // namespace ellforge
