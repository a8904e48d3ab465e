/*
 * Copyright 2026 The Lexplain Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LEXPLAIN_LEXPLAIN_H_
#define LEXPLAIN_LEXPLAIN_H_

#include "lexplain/corpus/ingest.h"
#include "lexplain/corpus/judgment.h"
#include "lexplain/corpus/split.h"
#include "lexplain/error.h"
#include "lexplain/eval/metrics.h"
#include "lexplain/explain/bags.h"
#include "lexplain/explain/dictionary.h"
#include "lexplain/explain/explanation.h"
#include "lexplain/explain/path.h"
#include "lexplain/explain/reconstruct.h"
#include "lexplain/featurize/chi2.h"
#include "lexplain/featurize/feature_space.h"
#include "lexplain/featurize/ngrams.h"
#include "lexplain/featurize/vectorize.h"
#include "lexplain/pipeline/config.h"
#include "lexplain/pipeline/pipeline.h"
#include "lexplain/pipeline/synthetic.h"
#include "lexplain/random.h"
#include "lexplain/textprep/normalize.h"
#include "lexplain/textprep/preprocess.h"
#include "lexplain/textprep/resources.h"
#include "lexplain/trees/forest.h"
#include "lexplain/trees/grid_search.h"
#include "lexplain/trees/hyperparams.h"
#include "lexplain/trees/impurity.h"
#include "lexplain/trees/model_io.h"
#include "lexplain/trees/training_data.h"
#include "lexplain/trees/tree.h"
#include "lexplain/utf8.h"

#endif  // LEXPLAIN_LEXPLAIN_H_
