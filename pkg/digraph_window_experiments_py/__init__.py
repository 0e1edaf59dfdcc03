"""無限有向グラフの有限窓を生成・解析する Python パッケージ。

データモデル（models）、操作（services）、設定（config）の 3 層で構成されています。
"""

__version__ = "0.1.0"
