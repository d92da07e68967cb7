#ifndef PROFMINE_PROFMINE_HPP
#define PROFMINE_PROFMINE_HPP

#include "profmine/arff.hpp"
#include "profmine/binning.hpp"
#include "profmine/date.hpp"
#include "profmine/error.hpp"
#include "profmine/features.hpp"
#include "profmine/ingest.hpp"
#include "profmine/knn.hpp"
#include "profmine/pipeline.hpp"
#include "profmine/profile.hpp"
#include "profmine/report.hpp"
#include "profmine/synthetic.hpp"
#include "profmine/textprep.hpp"

#endif  // PROFMINE_PROFMINE_HPP
