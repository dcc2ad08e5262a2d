#pragma once

#include "bit/biodiversity.hpp"
#include "bit/descriptor.hpp"
#include "bit/ecosystem.hpp"
#include "bit/error.hpp"
#include "bit/harness/feature_table.hpp"
#include "bit/harness/invariance.hpp"
#include "bit/harness/knn.hpp"
#include "bit/harness/metrics.hpp"
#include "bit/harness/normalize.hpp"
#include "bit/harness/protocol.hpp"
#include "bit/harness/split.hpp"
#include "bit/harness/transform.hpp"
#include "bit/preprocess.hpp"
#include "bit/taxonomy.hpp"
