// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include "assignment.hpp"
#include "chart_eval.hpp"
#include "config.hpp"
#include "dataset.hpp"
#include "difficulty.hpp"
#include "document.hpp"
#include "format_eval.hpp"
#include "geometry.hpp"
#include "grid.hpp"
#include "grounding.hpp"
#include "html.hpp"
#include "labels.hpp"
#include "model.hpp"
#include "numeric.hpp"
#include "report.hpp"
#include "table_eval.hpp"
#include "text.hpp"
#include "text_eval.hpp"
#include "unicode.hpp"
