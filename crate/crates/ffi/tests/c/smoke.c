#include <stdio.h>
#include <string.h>

#include "gdalg.h"

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "line %d: %s\n", __LINE__, #cond);              \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  char *dim = NULL;
  CHECK(gdalg_sgd_dim(5, &dim) == GDALG_STATUS_OK);
  CHECK(strcmp(dim, "1219") == 0);
  gdalg_string_free(dim);

  CHECK(gdalg_sgd_dim(0, &dim) == GDALG_STATUS_INVALID_ARGUMENT);
  CHECK(gdalg_last_error() != NULL);

  GdalgPresentation *p = NULL;
  CHECK(gdalg_presentation_load("nov", &p) == GDALG_STATUS_OK);
  size_t d = 0;
  CHECK(gdalg_component_dim(p, 4, &d) == GDALG_STATUS_OK);
  CHECK(d == 20);
  gdalg_presentation_free(p);

  char *image = NULL;
  CHECK(gdalg_verify_identity("gd1", "gd", NULL, &image) == GDALG_STATUS_OK);
  CHECK(strcmp(image, "0") == 0);
  gdalg_string_free(image);

  const char *argv[] = {"gdalg", "dim", "--n", "3"};
  char *report = NULL;
  int code = -1;
  CHECK(gdalg_run(4, argv, &report, &code) == GDALG_STATUS_OK);
  CHECK(code == 0);
  CHECK(strstr(report, "\"exit_code\": 0") != NULL);
  gdalg_string_free(report);

  printf("ok\n");
  return 0;
}
