#pragma once

#include <qseries/outcome.hpp>
#include <qseries/series.hpp>
#include <qseries/eta_theta.hpp>
#include <qseries/number_theory.hpp>
#include <qseries/partition_functions.hpp>
#include <qseries/series_cache.hpp>
#include <qseries/expr.hpp>
#include <qseries/identities.hpp>
#include <qseries/claims.hpp>
#include <qseries/properties.hpp>
#include <qseries/verifier.hpp>
