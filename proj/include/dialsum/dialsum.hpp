#pragma once

#include "dialsum/corpus_io.hpp"
#include "dialsum/corruption.hpp"
#include "dialsum/error.hpp"
#include "dialsum/mtl_mixer.hpp"
#include "dialsum/name_subst.hpp"
#include "dialsum/negation.hpp"
#include "dialsum/porter.hpp"
#include "dialsum/rouge.hpp"
#include "dialsum/text_core.hpp"
