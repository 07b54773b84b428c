#pragma once

// Umbrella header for the edgesec modeling language and analysis toolchain.

#include "edgesec/analysis.hpp"
#include "edgesec/diagnostics.hpp"
#include "edgesec/lexer.hpp"
#include "edgesec/model.hpp"
#include "edgesec/parser.hpp"
#include "edgesec/report.hpp"
#include "edgesec/serializer.hpp"
#include "edgesec/taxonomy.hpp"
#include "edgesec/validator.hpp"
#include "edgesec/version.hpp"
